// Copyright 2026 The lopp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lopp/interferometer.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "lopp/errors.hpp"

namespace lopp {

namespace {

constexpr double kSpanTolerance = 1e-6;

std::string format_angle(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

}  // namespace

Interferometer::Interferometer(ComplexMatrix matrix, std::string provenance)
    : matrix_(std::move(matrix)), provenance_(std::move(provenance)) {
  if (matrix_.rows() != matrix_.cols()) throw NonSquare("Interferometer: matrix is not square");
  if (matrix_.rows() == 0) throw InvalidArgument("Interferometer: zero modes");
  for (Eigen::Index i = 0; i < matrix_.size(); ++i) {
    if (!std::isfinite(matrix_.data()[i].real()) || !std::isfinite(matrix_.data()[i].imag())) {
      throw InvalidArgument("Interferometer: non-finite entry");
    }
  }
  const double err = unitarity_error();
  if (err > kUnitarityTolerance) {
    throw NotUnitary("Interferometer: unitarity error " + format_angle(err));
  }
}

Interferometer Interferometer::identity(int n_modes) {
  if (n_modes < 1) throw InvalidArgument("identity: n_modes must be >= 1");
  return Interferometer(ComplexMatrix::Identity(n_modes, n_modes), "identity");
}

double Interferometer::unitarity_error() const {
  const ComplexMatrix g = matrix_.adjoint() * matrix_;
  return (g - ComplexMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

Interferometer beam_splitter(double theta, double phi) {
  ComplexMatrix m(2, 2);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  m(0, 0) = std::polar(1.0, phi) * c;
  m(0, 1) = -s;
  m(1, 0) = s;
  m(1, 1) = std::polar(1.0, -phi) * c;
  return Interferometer(std::move(m),
                        "beam_splitter(theta=" + format_angle(theta) + ",phi=" + format_angle(phi) +
                            ")");
}

Interferometer phase_shifter(int n_modes, int mode, double phase) {
  if (mode < 0 || mode >= n_modes) throw BadModeIndex("phase_shifter: mode out of range");
  ComplexMatrix m = ComplexMatrix::Identity(n_modes, n_modes);
  m(mode, mode) = std::polar(1.0, phase);
  return Interferometer(std::move(m), "phase_shifter(mode=" + std::to_string(mode + 1) + ")");
}

Interferometer embed_two_mode(const Interferometer& element, int mode_i, int mode_j, int n_modes) {
  if (element.n_modes() != 2) throw DimensionMismatch("embed_two_mode: element must be 2x2");
  if (mode_i == mode_j || mode_i < 0 || mode_j < 0 || mode_i >= n_modes || mode_j >= n_modes) {
    throw BadModeIndex("embed_two_mode: modes (" + std::to_string(mode_i + 1) + "," +
                       std::to_string(mode_j + 1) + ") invalid for " + std::to_string(n_modes) +
                       " modes");
  }
  ComplexMatrix m = ComplexMatrix::Identity(n_modes, n_modes);
  m(mode_i, mode_i) = element(0, 0);
  m(mode_i, mode_j) = element(0, 1);
  m(mode_j, mode_i) = element(1, 0);
  m(mode_j, mode_j) = element(1, 1);
  return Interferometer(std::move(m), element.provenance() + "@(" + std::to_string(mode_i + 1) +
                                          "," + std::to_string(mode_j + 1) + ")");
}

Interferometer compose(const Interferometer& first, const Interferometer& second) {
  if (first.n_modes() != second.n_modes()) throw DimensionMismatch("compose: mode counts differ");
  return Interferometer(second.matrix() * first.matrix(),
                        first.provenance() + " ; " + second.provenance());
}

Interferometer complete_rows(const std::vector<ComplexVector>& rows, int n_modes) {
  if (n_modes < 1) throw InvalidArgument("complete_rows: n_modes must be >= 1");
  if (static_cast<int>(rows.size()) > n_modes) {
    throw DimensionMismatch("complete_rows: more rows than modes");
  }
  for (const auto& r : rows) {
    if (r.size() != n_modes) throw DimensionMismatch("complete_rows: row length != n_modes");
  }
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = a; b < rows.size(); ++b) {
      const Complex ip = rows[a].dot(rows[b]);  // conjugates the first argument
      const Complex expected = (a == b) ? 1.0 : 0.0;
      if (std::abs(ip - expected) > kUnitarityTolerance) {
        throw RowsNotOrthonormal("complete_rows: rows " + std::to_string(a + 1) + " and " +
                                 std::to_string(b + 1) + " are not orthonormal");
      }
    }
  }

  std::vector<ComplexVector> basis(rows.begin(), rows.end());
  for (int k = 0; k < n_modes && static_cast<int>(basis.size()) < n_modes; ++k) {
    ComplexVector v = ComplexVector::Unit(n_modes, k);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) v -= b.dot(v) * b;
    }
    const double norm = v.norm();
    if (norm > kSpanTolerance) basis.push_back(v / norm);
  }

  ComplexMatrix m(n_modes, n_modes);
  for (int i = 0; i < n_modes; ++i) m.row(i) = basis[i].transpose();
  return Interferometer(std::move(m), "complete_rows(" + std::to_string(rows.size()) + ")");
}

Interferometer haar_random(int n_modes, std::uint64_t seed) {
  if (n_modes < 1) throw InvalidArgument("haar_random: n_modes must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix z(n_modes, n_modes);
  for (int i = 0; i < n_modes; ++i) {
    for (int j = 0; j < n_modes; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n_modes, n_modes);
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < n_modes; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0.0) ? d / mag : Complex(1.0);
  }
  return Interferometer(std::move(q), "haar(seed=" + std::to_string(seed) + ")");
}

nlohmann::json to_json(const Interferometer& interf) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < interf.n_modes(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < interf.n_modes(); ++j) {
      row.push_back({{"re", interf(i, j).real()}, {"im", interf(i, j).imag()}});
    }
    rows.push_back(std::move(row));
  }
  return {{"n_modes", interf.n_modes()}, {"matrix", std::move(rows)},
          {"provenance", interf.provenance()}};
}

Interferometer interferometer_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n_modes").get<int>();
    const auto& rows = j.at("matrix");
    if (n < 1 || !rows.is_array() || static_cast<int>(rows.size()) != n) {
      throw InvalidArgument("interferometer json: matrix must have n_modes rows");
    }
    ComplexMatrix m(n, n);
    for (int r = 0; r < n; ++r) {
      if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != n) {
        throw InvalidArgument("interferometer json: row " + std::to_string(r + 1) +
                              " must have n_modes entries");
      }
      for (int c = 0; c < n; ++c) {
        const auto& e = rows[r][c];
        m(r, c) = Complex(e.at("re").get<double>(), e.at("im").get<double>());
      }
    }
    std::string provenance = j.value("provenance", std::string("json"));
    return Interferometer(std::move(m), std::move(provenance));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("interferometer json: ") + e.what());
  }
}

}  // namespace lopp
