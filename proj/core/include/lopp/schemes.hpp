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

#ifndef LOPP_SCHEMES_HPP
#define LOPP_SCHEMES_HPP

#include "lopp/conditioner.hpp"
#include "lopp/interferometer.hpp"

namespace lopp {

// ---------------------------------------------------------------------------
// Weak-coupling chain
// ---------------------------------------------------------------------------

/// N - 1 sources are merged into mode 2 with equal weights, and mode 2 is
/// coupled to the output mode through a beam splitter of reflectivity eps^2.
/// Post-selecting D photons in mode 2 and none elsewhere raises R by about
/// D (N - D) / (N - 1) for small eps.
///
/// Rows 1 and 2 of the network are
///   (-eps, a, ..., a) with a = sqrt((1 - eps^2)/(N - 1))
///   (sqrt(1 - eps^2), b, ..., b) with b = eps / sqrt(N - 1)
/// and the remaining rows do not affect the statistics.
struct ChainScheme {
  int n_modes = 0;
  double epsilon = 0.0;
  Interferometer interferometer = Interferometer::identity(1);

  /// D photons on mode 2 and vacuum on modes 3..N.
  DetectionPattern pattern_for(int detected) const;
};

/// Exact rows 1-2 completed by complete_rows. Throws BadParameters unless
/// N >= 3 and 0 < eps < 1.
ChainScheme build_chain(int n_modes, double epsilon);

/// The same network as an explicit cascade: beam splitters with
/// reflectivities 1/2, 1/3, ..., 1/(N-1) merge modes N..2 into mode 2, then a
/// beam splitter of reflectivity eps^2 couples modes 1 and 2. Rows 1-2 agree
/// with build_chain up to per-mode phases.
Interferometer build_chain_from_beam_splitters(int n_modes, double epsilon);

struct ChainAsymptotics {
  double r_factor = 0.0;  // R_out / R_in
  double g_value = 0.0;   // G_out
};

/// Small-eps limits: D (N - D)/(N - 1) and (D + 1)(N - D - 1)/(2 D (N - D)).
/// Throws BadParameters unless 1 <= D <= N - 1.
ChainAsymptotics chain_asymptotics(int n_modes, int detected);

// ---------------------------------------------------------------------------
// Three-mode scheme for pure alpha|0> + beta|1> inputs
// ---------------------------------------------------------------------------

struct PureSchemeParams {
  double theta = 0.0;
  double phi = 0.0;
  double theta_prime = 0.0;
  double phi_prime = 0.0;
};

/// Second beam-splitter angles that cancel the vacuum term after the second
/// stage. Throws DegenerateTheta when sin(theta) cos(theta) is (numerically)
/// zero.
PureSchemeParams pure_stage2_params(double theta, double phi);

/// Closed-form success probability
///   2 |beta|^6 sin^2 t cos^2 t sin^2 t' (2 cos^2 t' - sin^2 t')^2
/// with t' from pure_stage2_params. Throws DegenerateTheta.
double pure_success_probability(double theta, double phi, double beta_magnitude);

/// The same probability written in (theta, phi) alone. Defined everywhere;
/// it tends to 0 on the degenerate lines.
double pure_success_probability_eliminated(double theta, double phi, double beta_magnitude);

struct PureSchemeOutcome {
  PureSchemeParams params;
  PureState output{1};
  double probability = 0.0;  // both heralds succeed
  double fidelity = 0.0;     // |<1|output>|^2
};

/// Full pipeline on three copies of alpha|0> + beta|1>, alpha = sqrt(1-|beta|^2):
/// modes 1, 2 through BS(theta, phi) with vacuum on mode 2, then mode 1 and a
/// fresh copy through BS(theta', phi') with two photons on the fresh mode.
PureSchemeOutcome run_pure_scheme(double theta, double phi, Complex beta);

// ---------------------------------------------------------------------------
// Super-Poissonian purification
// ---------------------------------------------------------------------------

/// Mixes q with vacuum on `bs` and detects D photons on mode 2, where D + 1 is
/// the top of q's support and q_D = 0. The output is |1><1|.
///
/// Throws BadDistributionShape when q does not have that shape and
/// BadParameters when the beam splitter does not couple the two modes.
ConditionalResult purify_super_poissonian(const ModeDistribution& q, const Interferometer& bs);

}  // namespace lopp

#endif  // LOPP_SCHEMES_HPP
