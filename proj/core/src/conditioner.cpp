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

#include "lopp/conditioner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "lopp/errors.hpp"
#include "lopp/permanent.hpp"

namespace lopp {

namespace {

constexpr double kClampTolerance = 1e-14;

ResultObserver& observer() {
  static ResultObserver instance;
  return instance;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Complex ipow(Complex base, int exponent) {
  Complex r = 1.0;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

}  // namespace

PhotonConfig DetectionPattern::with_output(int n1) const {
  std::vector<int> full;
  full.reserve(counts_.size() + 1);
  full.push_back(n1);
  full.insert(full.end(), counts_.counts().begin(), counts_.counts().end());
  return PhotonConfig(std::move(full));
}

ConditionalResult ConditionalResult::from_unnormalized(std::vector<double> unnormalized,
                                                       int detected) {
  ConditionalResult r;
  r.detected = detected;
  for (double& c : unnormalized) {
    if (c < 0.0 && c >= -kClampTolerance) c = 0.0;
  }
  r.unnormalized = std::move(unnormalized);
  if (r.unnormalized.empty()) r.unnormalized.push_back(0.0);
  for (double c : r.unnormalized) r.pattern_probability += c;
  r.normalized.assign(r.unnormalized.size(), 0.0);
  if (r.pattern_probability > 0.0) {
    for (std::size_t n = 0; n < r.unnormalized.size(); ++n) {
      r.normalized[n] = r.unnormalized[n] / r.pattern_probability;
    }
  }
  return r;
}

double ConditionalResult::probability(int n) const {
  if (n < 0 || n >= static_cast<int>(normalized.size())) return 0.0;
  return normalized[n];
}

void set_result_observer(ResultObserver obs) { observer() = std::move(obs); }

ConditionalResult condition_mixed(const InputSpec& spec, const Interferometer& interf,
                                  const DetectionPattern& pattern) {
  const auto n_modes = spec.n_modes();
  if (static_cast<std::size_t>(interf.n_modes()) != n_modes) {
    throw DimensionMismatch("condition_mixed: interferometer has " +
                            std::to_string(interf.n_modes()) + " modes, inputs have " +
                            std::to_string(n_modes));
  }
  if (pattern.size() + 1 != n_modes) {
    throw DimensionMismatch("condition_mixed: pattern covers " + std::to_string(pattern.size()) +
                            " modes, expected " + std::to_string(n_modes - 1));
  }

  const int detected = pattern.detected();
  const int cap = spec.max_total_photons() - detected;
  std::vector<double> coeffs(static_cast<std::size_t>(std::max(cap, 0)) + 1, 0.0);
  if (cap >= 0) {
    const double pattern_factorials = pattern.counts().factorial_product();
    for (int n1 = 0; n1 <= cap; ++n1) {
      const PhotonConfig out = pattern.with_output(n1);
      double acc = 0.0;
      double scale = 0.0;
      for_each_input(spec, detected + n1, [&](const PhotonConfig& s, double weight) {
        const PermanentEstimate per = permanent_with_bound(interf.matrix(), out, s);
        acc += weight * std::norm(per.value);
        scale += weight * per.magnitude * per.magnitude;
      });
      // below the rounding error of the sum the coefficient is indistinguishable from 0
      const double noise = 4.0 * (detected + n1 + 2) * std::numeric_limits<double>::epsilon() * scale;
      coeffs[n1] = acc > noise ? acc / (factorial(n1) * pattern_factorials) : 0.0;
    }
  }
  auto result = ConditionalResult::from_unnormalized(std::move(coeffs), detected);
  if (const auto& obs = observer()) obs(spec, result);
  return result;
}

ConditionalResult condition_mixed_bs_closed_form(const ModeDistribution& first,
                                                 const ModeDistribution& second,
                                                 const Interferometer& bs, int detected) {
  if (bs.n_modes() != 2) throw DimensionMismatch("closed form: beam splitter must be 2x2");
  if (detected < 0) throw InvalidArgument("closed form: negative detection count");
  const Complex l11 = bs(0, 0);
  const Complex l12 = bs(0, 1);
  const Complex l21 = bs(1, 0);
  const Complex l22 = bs(1, 1);
  const int d = detected;
  const int cap = first.cap() + second.cap() - d;

  std::vector<double> coeffs(static_cast<std::size_t>(std::max(cap, 0)) + 1, 0.0);
  for (int k = 0; k <= first.cap(); ++k) {
    for (int l = 0; l <= second.cap(); ++l) {
      const int n1 = k + l - d;
      if (n1 < 0) continue;
      const double weight = first.probability(k) * second.probability(l);
      if (weight == 0.0) continue;
      // j photons from input 1 and d - j from input 2 reach the detector.
      Complex inner = 0.0;
      for (int j = std::max(0, d - l); j <= std::min(k, d); ++j) {
        inner += ipow(l11, k - j) * ipow(l21, j) * ipow(l12, l - d + j) * ipow(l22, d - j) /
                 (factorial(j) * factorial(k - j) * factorial(d - j) * factorial(l - d + j));
      }
      coeffs[n1] +=
          weight * factorial(k) * factorial(l) * factorial(d) * factorial(n1) * std::norm(inner);
    }
  }
  return ConditionalResult::from_unnormalized(std::move(coeffs), d);
}

PureState PureState::fock(const PhotonConfig& config) {
  PureState s(config.size());
  s.add(config, 1.0);
  return s;
}

PureState PureState::product(const std::vector<std::vector<Complex>>& amplitudes) {
  PureState state(amplitudes.size());
  std::vector<int> counts(amplitudes.size(), 0);
  std::function<void(std::size_t, Complex)> recurse = [&](std::size_t i, Complex amp) {
    if (i == amplitudes.size()) {
      state.add(PhotonConfig(counts), amp);
      return;
    }
    for (std::size_t n = 0; n < amplitudes[i].size(); ++n) {
      if (amplitudes[i][n] == Complex(0.0)) continue;
      counts[i] = static_cast<int>(n);
      recurse(i + 1, amp * amplitudes[i][n]);
    }
    counts[i] = 0;
  };
  recurse(0, 1.0);
  return state;
}

Complex PureState::amplitude(const PhotonConfig& config) const {
  const auto it = amps_.find(config);
  return it == amps_.end() ? Complex(0.0) : it->second;
}

void PureState::add(const PhotonConfig& config, Complex amplitude) {
  if (config.size() != n_modes_) throw DimensionMismatch("PureState: configuration size");
  amps_[config] += amplitude;
}

double PureState::norm_squared() const {
  double s = 0.0;
  for (const auto& [config, amp] : amps_) s += std::norm(amp);
  return s;
}

PureState PureState::normalized() const {
  const double norm = std::sqrt(norm_squared());
  PureState out(n_modes_);
  if (norm == 0.0) return out;
  for (const auto& [config, amp] : amps_) out.amps_[config] = amp / norm;
  return out;
}

PureState PureState::tensor(const PureState& other) const {
  PureState out(n_modes_ + other.n_modes_);
  for (const auto& [a, amp_a] : amps_) {
    for (const auto& [b, amp_b] : other.amps_) {
      std::vector<int> counts(a.counts().begin(), a.counts().end());
      counts.insert(counts.end(), b.counts().begin(), b.counts().end());
      out.add(PhotonConfig(std::move(counts)), amp_a * amp_b);
    }
  }
  return out;
}

PureState propagate_pure(const PureState& state, const Interferometer& interf) {
  if (state.n_modes() != static_cast<std::size_t>(interf.n_modes())) {
    throw DimensionMismatch("propagate_pure: state has " + std::to_string(state.n_modes()) +
                            " modes, interferometer has " + std::to_string(interf.n_modes()));
  }
  PureState out(state.n_modes());
  for (const auto& [s, amp] : state.amplitudes()) {
    const double s_fact = s.factorial_product();
    for (const auto& n : compositions(state.n_modes(), s.total())) {
      const Complex per = permanent_with_multiplicity(interf.matrix(), n, s);
      if (per == Complex(0.0)) continue;
      out.add(n, amp * per / std::sqrt(n.factorial_product() * s_fact));
    }
  }
  return out;
}

PureConditioning condition_pure(const PureState& state, const DetectionPattern& pattern) {
  if (pattern.size() + 1 != state.n_modes()) {
    throw DimensionMismatch("condition_pure: pattern covers " + std::to_string(pattern.size()) +
                            " modes, expected " + std::to_string(state.n_modes() - 1));
  }
  PureState projected(1);
  for (const auto& [config, amp] : state.amplitudes()) {
    bool match = true;
    for (std::size_t j = 0; j < pattern.size() && match; ++j) match = config[j + 1] == pattern[j];
    if (match) projected.add(PhotonConfig{config[0]}, amp);
  }
  PureConditioning result;
  result.probability = projected.norm_squared();
  if (result.probability > 0.0) result.mode_state = projected.normalized();
  return result;
}

}  // namespace lopp
