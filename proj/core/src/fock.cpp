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

#include "lopp/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lopp/errors.hpp"

namespace lopp {

namespace {

constexpr double kDistributionTolerance = 1e-12;
constexpr double kMomentTolerance = 1e-9;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

PhotonConfig::PhotonConfig(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw InvalidArgument("PhotonConfig: at least one mode required");
  for (int c : counts_) {
    if (c < 0) throw InvalidArgument("PhotonConfig: negative photon count");
  }
}

PhotonConfig::PhotonConfig(std::initializer_list<int> counts)
    : PhotonConfig(std::vector<int>(counts)) {}

PhotonConfig PhotonConfig::zeros(std::size_t n_modes) {
  return PhotonConfig(std::vector<int>(n_modes, 0));
}

int PhotonConfig::total() const { return std::accumulate(counts_.begin(), counts_.end(), 0); }

double PhotonConfig::factorial_product() const {
  double f = 1.0;
  for (int c : counts_) f *= factorial(c);
  return f;
}

std::string PhotonConfig::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (i) out << ',';
    out << counts_[i];
  }
  out << ')';
  return out.str();
}

ModeDistribution::ModeDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw InvalidArgument("ModeDistribution: empty support");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InvalidArgument("ModeDistribution: probability outside [0, 1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kDistributionTolerance) {
    throw NotNormalized("ModeDistribution: probabilities sum to " + std::to_string(sum));
  }
  while (probs_.size() > 1 && probs_.back() == 0.0) probs_.pop_back();
}

ModeDistribution ModeDistribution::from_pairs(std::span<const std::pair<int, double>> pairs) {
  int max_count = 0;
  for (const auto& [n, p] : pairs) {
    if (n < 0) throw InvalidArgument("ModeDistribution: negative photon count");
    max_count = std::max(max_count, n);
  }
  std::vector<double> dense(static_cast<std::size_t>(max_count) + 1, 0.0);
  std::vector<bool> seen(dense.size(), false);
  for (const auto& [n, p] : pairs) {
    if (seen[n]) throw InvalidArgument("ModeDistribution: repeated photon count");
    seen[n] = true;
    dense[n] = p;
  }
  return ModeDistribution(std::move(dense));
}

ModeDistribution ModeDistribution::from_pairs(
    std::initializer_list<std::pair<int, double>> pairs) {
  return from_pairs(std::span<const std::pair<int, double>>(pairs.begin(), pairs.size()));
}

ModeDistribution ModeDistribution::from_dense(std::vector<double> probabilities) {
  return ModeDistribution(std::move(probabilities));
}

ModeDistribution ModeDistribution::two_level(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("two_level: p outside [0, 1]");
  return ModeDistribution({1.0 - p, p});
}

ModeDistribution ModeDistribution::vacuum() { return ModeDistribution({1.0}); }

double ModeDistribution::probability(int count) const {
  if (count < 0 || count > cap()) return 0.0;
  return probs_[count];
}

InputSpec::InputSpec(std::vector<ModeDistribution> modes) : modes_(std::move(modes)) {
  if (modes_.empty()) throw InvalidArgument("InputSpec: at least one mode required");
}

InputSpec InputSpec::two_level(std::span<const double> efficiencies) {
  std::vector<ModeDistribution> modes;
  modes.reserve(efficiencies.size());
  for (double p : efficiencies) modes.push_back(ModeDistribution::two_level(p));
  return InputSpec(std::move(modes));
}

InputSpec InputSpec::two_level(std::initializer_list<double> efficiencies) {
  return two_level(std::span<const double>(efficiencies.begin(), efficiencies.size()));
}

InputSpec InputSpec::uniform_two_level(std::size_t n_modes, double p) {
  return InputSpec(std::vector<ModeDistribution>(n_modes, ModeDistribution::two_level(p)));
}

double InputSpec::p_max() const {
  double best = 0.0;
  for (const auto& m : modes_) best = std::max(best, m.probability(1));
  return best;
}

int InputSpec::active_modes() const {
  return static_cast<int>(
      std::count_if(modes_.begin(), modes_.end(), [](const auto& m) { return !m.is_vacuum(); }));
}

int InputSpec::max_total_photons() const {
  int total = 0;
  for (const auto& m : modes_) total += m.cap();
  return total;
}

bool InputSpec::is_two_level() const {
  return std::all_of(modes_.begin(), modes_.end(), [](const auto& m) { return m.cap() <= 1; });
}

double InputSpec::weight(const PhotonConfig& s) const {
  if (s.size() != modes_.size()) throw DimensionMismatch("InputSpec::weight: mode count");
  double w = 1.0;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    w *= modes_[i].probability(s[i]) / factorial(s[i]);
  }
  return w;
}

void for_each_input(const InputSpec& spec, int total_photons,
                    const std::function<void(const PhotonConfig&, double)>& visit) {
  const std::size_t n = spec.n_modes();
  if (total_photons < 0 || total_photons > spec.max_total_photons()) return;

  // remaining_cap[i] = sum of caps of modes i..n-1
  std::vector<int> remaining_cap(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) remaining_cap[i] = remaining_cap[i + 1] + spec.mode(i).cap();

  std::vector<int> counts(n, 0);
  std::vector<double> partial(n + 1, 1.0);

  std::function<void(std::size_t, int)> recurse = [&](std::size_t i, int left) {
    if (i == n) {
      if (left == 0) visit(PhotonConfig(counts), partial[n]);
      return;
    }
    const auto& dist = spec.mode(i);
    const int lo = std::max(0, left - remaining_cap[i + 1]);
    const int hi = std::min(dist.cap(), left);
    for (int c = lo; c <= hi; ++c) {
      const double p = dist.probability(c);
      if (p == 0.0) continue;
      counts[i] = c;
      partial[i + 1] = partial[i] * p / factorial(c);
      recurse(i + 1, left - c);
    }
    counts[i] = 0;
  };
  recurse(0, total_photons);
}

std::vector<WeightedConfig> enumerate_inputs(const InputSpec& spec, int total_photons) {
  std::vector<WeightedConfig> out;
  for_each_input(spec, total_photons, [&](const PhotonConfig& s, double w) {
    out.push_back({s, w});
  });
  return out;
}

std::vector<PhotonConfig> compositions(std::size_t n_modes, int total_photons) {
  std::vector<PhotonConfig> out;
  if (n_modes == 0 || total_photons < 0) return out;
  std::vector<int> counts(n_modes, 0);
  std::function<void(std::size_t, int)> recurse = [&](std::size_t i, int left) {
    if (i + 1 == n_modes) {
      counts[i] = left;
      out.emplace_back(counts);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[i] = c;
      recurse(i + 1, left - c);
    }
  };
  recurse(0, total_photons);
  return out;
}

Moments distribution_moments(std::span<const std::pair<int, double>> coefficients) {
  double sum = 0.0;
  double first = 0.0;
  for (const auto& [n, p] : coefficients) {
    sum += p;
    first += n * p;
  }
  if (std::abs(sum - 1.0) > kMomentTolerance) {
    throw NotNormalized("distribution_moments: probabilities sum to " + std::to_string(sum));
  }
  double central = 0.0;
  for (const auto& [n, p] : coefficients) central += p * (n - first) * (n - first);
  return {first, central};
}

Moments distribution_moments(std::span<const double> probabilities) {
  std::vector<std::pair<int, double>> pairs;
  pairs.reserve(probabilities.size());
  for (std::size_t n = 0; n < probabilities.size(); ++n) {
    pairs.emplace_back(static_cast<int>(n), probabilities[n]);
  }
  return distribution_moments(pairs);
}

}  // namespace lopp
