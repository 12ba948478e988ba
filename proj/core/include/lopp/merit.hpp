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

#ifndef LOPP_MERIT_HPP
#define LOPP_MERIT_HPP

#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "lopp/conditioner.hpp"

namespace lopp {

/// Slack allowed when checking R_out <= R_in (M - D).
inline constexpr double kBoundTolerance = 1e-9;

/// Figures of merit for the output mode against the inputs.
///
/// R = c1/c0, G = (c2/c1)/(c1/c0), Pi = variance/mean. Flags mark values that
/// are infinite (R with c0 = 0) or undefined (G with c1 = 0, Pi with mean 0);
/// the numeric field is then meaningless.
struct MeritReport {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double r_out = 0.0;
  bool r_out_infinite = false;
  double g_out = 0.0;
  bool g_out_undefined = false;
  double pi_out = 0.0;
  bool pi_out_undefined = false;

  double p_max = 0.0;
  double r_in = 0.0;   // p_max / (1 - p_max)
  double pi_in = 0.0;  // 1 - p_max
  double g_in = 0.0;

  bool improvement_c1 = false;  // c1 > p_max
  /// R_in (M - D); only meaningful when bound_applicable.
  double bound_rhs = 0.0;
  bool bound_applicable = false;
  bool bound_holds = true;
};

/// Throws ZeroProbabilityPattern when the result has probability 0.
MeritReport figures_of_merit(const ConditionalResult& result, const InputSpec& spec);

/// True when R_out <= R_in (M - D) + 1e-9 for a two-level input with an
/// exact pattern; vacuously true otherwise.
bool satisfies_ratio_bound(const ConditionalResult& result, const InputSpec& spec);

/// d[n1] = sum over binary s supported on `active_modes` with |s| = D + n1
/// of |per(L[n, s])|^2, for n1 = 0 .. |active| - D.
///
/// With every active mode at efficiency p, c[n1] is proportional to
/// d[n1] R_in^n1 / n1!. Throws DimensionMismatch or BadModeIndex.
std::vector<double> d_coefficients(const Interferometer& interf, const DetectionPattern& pattern,
                                   std::span<const int> active_modes);

/// Normalised c[n1] rebuilt from d-coefficients at efficiency p.
std::vector<double> reconstruct_from_d(std::span<const double> d, double p);

/// d1 > d0 + sum_{n >= 2} d_n R^n / n!
bool improvement_predicate(std::span<const double> d, double r_in);

/// Largest R_in for which improvement_predicate holds (bisection to 1e-12).
/// Returns 0 when d1 <= d0 and +inf when there are no multiphoton terms.
double improvement_threshold(std::span<const double> d);

nlohmann::json to_json(const MeritReport& report);

}  // namespace lopp

#endif  // LOPP_MERIT_HPP
