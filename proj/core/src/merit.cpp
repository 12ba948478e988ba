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

#include "lopp/merit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "lopp/errors.hpp"
#include "lopp/permanent.hpp"

namespace lopp {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// sum_{n >= 2} d_n r^n / n!
double multiphoton_side(std::span<const double> d, double r) {
  double s = 0.0;
  double power = r;
  for (std::size_t n = 2; n < d.size(); ++n) {
    power *= r;
    s += d[n] * power / factorial(static_cast<int>(n));
  }
  return s;
}

}  // namespace

MeritReport figures_of_merit(const ConditionalResult& result, const InputSpec& spec) {
  if (!result.defined()) {
    throw ZeroProbabilityPattern("figures_of_merit: detection pattern has probability 0");
  }
  MeritReport m;
  m.c0 = result.probability(0);
  m.c1 = result.probability(1);
  m.c2 = result.probability(2);

  if (m.c0 > 0.0) {
    m.r_out = m.c1 / m.c0;
  } else {
    m.r_out = std::numeric_limits<double>::infinity();
    m.r_out_infinite = true;
  }
  if (m.c1 > 0.0) {
    m.g_out = (m.c2 == 0.0) ? 0.0 : m.c2 * m.c0 / (m.c1 * m.c1);
  } else {
    m.g_out_undefined = true;
  }
  const Moments mom = distribution_moments(result.normalized);
  if (mom.mean > 0.0) {
    m.pi_out = mom.variance / mom.mean;
  } else {
    m.pi_out_undefined = true;
  }

  m.p_max = spec.p_max();
  m.r_in = (m.p_max < 1.0) ? m.p_max / (1.0 - m.p_max) : std::numeric_limits<double>::infinity();
  m.pi_in = 1.0 - m.p_max;
  m.g_in = 0.0;
  m.improvement_c1 = m.c1 > m.p_max;

  m.bound_applicable = spec.is_two_level() && result.detected >= 0;
  if (m.bound_applicable) {
    m.bound_rhs = m.r_in * (spec.active_modes() - result.detected);
    m.bound_holds = satisfies_ratio_bound(result, spec);
  }
  return m;
}

bool satisfies_ratio_bound(const ConditionalResult& result, const InputSpec& spec) {
  if (!spec.is_two_level() || result.detected < 0 || !result.defined()) return true;
  const double c0 = result.probability(0);
  const double c1 = result.probability(1);
  const double p = spec.p_max();
  if (p >= 1.0) return true;
  const double rhs = p / (1.0 - p) * (spec.active_modes() - result.detected);
  // c1 <= rhs c0 + tol c0 avoids dividing by a vanishing c0
  return c1 <= (rhs + kBoundTolerance) * c0 || (c1 == 0.0);
}

std::vector<double> d_coefficients(const Interferometer& interf, const DetectionPattern& pattern,
                                   std::span<const int> active_modes) {
  const int n_modes = interf.n_modes();
  if (static_cast<int>(pattern.size()) + 1 != n_modes) {
    throw DimensionMismatch("d_coefficients: pattern length does not match interferometer");
  }
  std::set<int> seen;
  for (int m : active_modes) {
    if (m < 0 || m >= n_modes || !seen.insert(m).second) {
      throw BadModeIndex("d_coefficients: invalid or repeated active mode");
    }
  }
  const int active = static_cast<int>(active_modes.size());
  const int detected = pattern.detected();
  if (detected > active) return {};

  std::vector<double> d(static_cast<std::size_t>(active - detected) + 1, 0.0);
  for (int n1 = 0; n1 <= active - detected; ++n1) {
    const PhotonConfig out = pattern.with_output(n1);
    const int photons = detected + n1;
    // subsets of the active modes with `photons` elements
    std::vector<bool> chosen(active, false);
    std::fill(chosen.end() - photons, chosen.end(), true);
    double acc = 0.0;
    do {
      std::vector<int> s(n_modes, 0);
      for (int a = 0; a < active; ++a) {
        if (chosen[a]) s[active_modes[a]] = 1;
      }
      acc += std::norm(permanent_with_multiplicity(interf.matrix(), out, PhotonConfig(s)));
    } while (std::next_permutation(chosen.begin(), chosen.end()));
    d[n1] = acc;
  }
  return d;
}

std::vector<double> reconstruct_from_d(std::span<const double> d, double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("reconstruct_from_d: p must lie in (0, 1)");
  const double r = p / (1.0 - p);
  std::vector<double> c(d.size(), 0.0);
  double power = 1.0;
  double total = 0.0;
  for (std::size_t n = 0; n < d.size(); ++n) {
    c[n] = d[n] * power / factorial(static_cast<int>(n));
    total += c[n];
    power *= r;
  }
  if (total > 0.0) {
    for (double& x : c) x /= total;
  }
  return c;
}

bool improvement_predicate(std::span<const double> d, double r_in) {
  const double d0 = d.empty() ? 0.0 : d[0];
  const double d1 = d.size() > 1 ? d[1] : 0.0;
  return d1 > d0 + multiphoton_side(d, r_in);
}

double improvement_threshold(std::span<const double> d) {
  const double d0 = d.empty() ? 0.0 : d[0];
  const double d1 = d.size() > 1 ? d[1] : 0.0;
  if (!(d1 > d0)) return 0.0;
  const bool has_multiphoton =
      d.size() > 2 && std::any_of(d.begin() + 2, d.end(), [](double x) { return x > 0.0; });
  if (!has_multiphoton) return std::numeric_limits<double>::infinity();

  auto excess = [&](double r) { return d0 + multiphoton_side(d, r) - d1; };
  double lo = 0.0;
  double hi = 1.0;
  while (excess(hi) < 0.0) hi *= 2.0;
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

nlohmann::json to_json(const MeritReport& m) {
  auto num = [](double x, bool flagged) -> nlohmann::json {
    if (flagged || !std::isfinite(x)) return nullptr;
    return x;
  };
  nlohmann::json j;
  j["c0"] = m.c0;
  j["c1"] = m.c1;
  j["c2"] = m.c2;
  j["R_out"] = num(m.r_out, m.r_out_infinite);
  j["R_out_infinite"] = m.r_out_infinite;
  j["G_out"] = num(m.g_out, m.g_out_undefined);
  j["G_out_undefined"] = m.g_out_undefined;
  j["Pi_out"] = num(m.pi_out, m.pi_out_undefined);
  j["Pi_out_undefined"] = m.pi_out_undefined;
  j["p_max"] = m.p_max;
  j["R_in"] = num(m.r_in, false);
  j["Pi_in"] = m.pi_in;
  j["G_in"] = m.g_in;
  j["improvement_c1"] = m.improvement_c1;
  j["bound_applicable"] = m.bound_applicable;
  j["bound_rhs"] = m.bound_applicable ? num(m.bound_rhs, false) : nlohmann::json(nullptr);
  j["bound_holds"] = m.bound_holds;
  return j;
}

}  // namespace lopp
