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

#ifndef LOPP_INTERFEROMETER_HPP
#define LOPP_INTERFEROMETER_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "lopp/permanent.hpp"

namespace lopp {

inline constexpr double kUnitarityTolerance = 1e-10;

/// A passive linear-optical network on N modes.
///
/// Creation operators transform as a_i^dag -> sum_k matrix(k, i) a_k^dag, so
/// column i is where a photon entering mode i ends up. Modes are 0-based in
/// code; anything printed for people is 1-based.
class Interferometer {
 public:
  /// Throws NonSquare, or NotUnitary when M^dag M deviates from I by more
  /// than 1e-10 in any entry.
  explicit Interferometer(ComplexMatrix matrix, std::string provenance = "matrix");

  static Interferometer identity(int n_modes);

  int n_modes() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  Complex operator()(int row, int col) const { return matrix_(row, col); }
  const std::string& provenance() const { return provenance_; }

  /// Largest entry of |M^dag M - I|.
  double unitarity_error() const;

 private:
  ComplexMatrix matrix_;
  std::string provenance_;
};

/// [[e^{i phi} cos(theta), -sin(theta)], [sin(theta), e^{-i phi} cos(theta)]]
///
/// Reflectivity is cos^2(theta), the probability that a photon entering the
/// first port leaves by the first port.
Interferometer beam_splitter(double theta, double phi);

/// Phase e^{i phase} on one mode of an n_modes network.
Interferometer phase_shifter(int n_modes, int mode, double phase);

/// Places a two-mode element on modes (i, j) of an n_modes identity; the
/// element's first port maps to mode i. Throws BadModeIndex.
Interferometer embed_two_mode(const Interferometer& element, int mode_i, int mode_j, int n_modes);

/// Network equivalent to `first` followed by `second`.
Interferometer compose(const Interferometer& first, const Interferometer& second);

/// Completes orthonormal rows to a unitary. The given rows are copied
/// unchanged; the rest come from Gram-Schmidt on e_0, e_1, ... in order,
/// skipping basis vectors already spanned.
///
/// Throws RowsNotOrthonormal, or DimensionMismatch for wrong row lengths or
/// more than n_modes rows.
Interferometer complete_rows(const std::vector<ComplexVector>& rows, int n_modes);

/// Haar-distributed unitary: QR of a complex Ginibre matrix from a seeded
/// std::mt19937_64, with R's diagonal phases folded into Q.
Interferometer haar_random(int n_modes, std::uint64_t seed);

nlohmann::json to_json(const Interferometer& interf);
/// Accepts the layout written by to_json. Throws InvalidArgument on
/// malformed input and NotUnitary on a non-unitary matrix.
Interferometer interferometer_from_json(const nlohmann::json& j);

}  // namespace lopp

#endif  // LOPP_INTERFEROMETER_HPP
