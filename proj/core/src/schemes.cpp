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

#include "lopp/schemes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lopp/errors.hpp"

namespace lopp {

namespace {

constexpr double kDegenerateTolerance = 1e-12;

}  // namespace

DetectionPattern ChainScheme::pattern_for(int detected) const {
  std::vector<int> counts(static_cast<std::size_t>(n_modes - 1), 0);
  counts[0] = detected;
  return DetectionPattern(std::move(counts));
}

ChainScheme build_chain(int n_modes, double epsilon) {
  if (n_modes < 3) throw BadParameters("build_chain: need at least 3 modes");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw BadParameters("build_chain: epsilon must be in (0, 1)");
  const double others = static_cast<double>(n_modes - 1);
  const double strong = std::sqrt(1.0 - epsilon * epsilon);

  ComplexVector row1(n_modes);
  ComplexVector row2(n_modes);
  row1[0] = -epsilon;
  row2[0] = strong;
  for (int i = 1; i < n_modes; ++i) {
    row1[i] = std::sqrt((1.0 - epsilon * epsilon) / others);
    row2[i] = epsilon / std::sqrt(others);
  }
  Interferometer completed = complete_rows({row1, row2}, n_modes);

  ChainScheme scheme;
  scheme.n_modes = n_modes;
  scheme.epsilon = epsilon;
  scheme.interferometer =
      Interferometer(completed.matrix(), "chain(N=" + std::to_string(n_modes) + ",eps=" +
                                             std::to_string(epsilon) + ")");
  return scheme;
}

Interferometer build_chain_from_beam_splitters(int n_modes, double epsilon) {
  if (n_modes < 3) throw BadParameters("build_chain_from_beam_splitters: need at least 3 modes");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw BadParameters("build_chain_from_beam_splitters: epsilon must be in (0, 1)");
  }
  Interferometer net = Interferometer::identity(n_modes);
  // Merge step k folds mode N-1-k into the running sum held on mode N-k.
  for (int k = 1; k <= n_modes - 2; ++k) {
    const int fresh = n_modes - 1 - k;
    const double theta = std::acos(std::sqrt(1.0 / (k + 1)));
    net = compose(net, embed_two_mode(beam_splitter(theta, 0.0), fresh, fresh + 1, n_modes));
  }
  const double theta = std::acos(epsilon);
  net = compose(net, embed_two_mode(beam_splitter(theta, std::numbers::pi), 0, 1, n_modes));
  return net;
}

ChainAsymptotics chain_asymptotics(int n_modes, int detected) {
  if (detected < 1 || detected > n_modes - 1) {
    throw BadParameters("chain_asymptotics: need 1 <= D <= N - 1");
  }
  const double n = n_modes;
  const double d = detected;
  return {d * (n - d) / (n - 1.0), (d + 1.0) * (n - d - 1.0) / (2.0 * d * (n - d))};
}

PureSchemeParams pure_stage2_params(double theta, double phi) {
  const double sc = std::sin(theta) * std::cos(theta);
  if (std::abs(sc) < kDegenerateTolerance) {
    throw DegenerateTheta("pure_stage2_params: sin(theta) cos(theta) = 0");
  }
  const Complex c = std::cos(theta) - std::polar(1.0, -phi) * std::sin(theta);
  PureSchemeParams p;
  p.theta = theta;
  p.phi = phi;
  p.theta_prime = std::atan(std::abs(c) / sc);
  p.phi_prime = std::arg(c);
  return p;
}

double pure_success_probability(double theta, double phi, double beta_magnitude) {
  const PureSchemeParams p = pure_stage2_params(theta, phi);
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double sp = std::sin(p.theta_prime);
  const double cp = std::cos(p.theta_prime);
  const double b6 = std::pow(beta_magnitude, 6);
  const double lobe = 2.0 * cp * cp - sp * sp;
  return 2.0 * b6 * s * s * c * c * sp * sp * lobe * lobe;
}

double pure_success_probability_eliminated(double theta, double phi, double beta_magnitude) {
  const double s2 = std::sin(2.0 * theta);
  const double cs = std::cos(phi) * s2;
  const double b6 = std::pow(beta_magnitude, 6);
  const double inner = 0.5 * s2 * s2 - 1.0 + cs;
  const double denom = 0.25 * s2 * s2 + 1.0 - cs;
  return b6 * 0.5 * s2 * s2 * (1.0 - cs) * inner * inner / (denom * denom * denom);
}

PureSchemeOutcome run_pure_scheme(double theta, double phi, Complex beta) {
  const double b2 = std::norm(beta);
  if (b2 > 1.0 + 1e-12) throw BadParameters("run_pure_scheme: |beta| > 1");
  const Complex alpha = std::sqrt(std::max(0.0, 1.0 - b2));
  const std::vector<Complex> source{alpha, beta};

  PureSchemeOutcome out;
  out.params = pure_stage2_params(theta, phi);

  const PureState first = PureState::product({source, source});
  const PureConditioning stage1 =
      condition_pure(propagate_pure(first, beam_splitter(theta, phi)), DetectionPattern{0});
  if (!stage1.defined()) return out;

  const PureState second = stage1.mode_state.tensor(PureState::product({source}));
  const PureConditioning stage2 = condition_pure(
      propagate_pure(second, beam_splitter(out.params.theta_prime, out.params.phi_prime)),
      DetectionPattern{2});
  out.probability = stage1.probability * stage2.probability;
  if (!stage2.defined()) return out;
  out.output = stage2.mode_state;
  out.fidelity = std::norm(out.output.amplitude(PhotonConfig{1}));
  return out;
}

ConditionalResult purify_super_poissonian(const ModeDistribution& q, const Interferometer& bs) {
  if (bs.n_modes() != 2) throw DimensionMismatch("purify_super_poissonian: need a 2x2 element");
  const int top = q.cap();
  if (top < 1) {
    throw BadDistributionShape("purify_super_poissonian: q needs support above vacuum");
  }
  const int detected = top - 1;
  if (q.probability(detected) != 0.0) {
    throw BadDistributionShape("purify_super_poissonian: q_" + std::to_string(detected) +
                               " must be zero");
  }
  if (std::abs(bs(0, 0)) < kDegenerateTolerance || std::abs(bs(0, 1)) < kDegenerateTolerance) {
    throw BadParameters("purify_super_poissonian: beam splitter must couple both modes");
  }
  const InputSpec spec({q, ModeDistribution::vacuum()});
  return condition_mixed(spec, bs, DetectionPattern{detected});
}

}  // namespace lopp
