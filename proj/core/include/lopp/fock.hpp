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

#ifndef LOPP_FOCK_HPP
#define LOPP_FOCK_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lopp {

/// Occupation numbers over a fixed set of modes. Used both for input photon
/// configurations and for detection records.
class PhotonConfig {
 public:
  PhotonConfig() = default;
  explicit PhotonConfig(std::vector<int> counts);
  PhotonConfig(std::initializer_list<int> counts);

  static PhotonConfig zeros(std::size_t n_modes);

  std::size_t size() const { return counts_.size(); }
  int operator[](std::size_t i) const { return counts_[i]; }
  std::span<const int> counts() const { return counts_; }

  int total() const;
  /// Product of counts[i]! over all modes.
  double factorial_product() const;

  std::string to_string() const;

  auto operator<=>(const PhotonConfig&) const = default;
  bool operator==(const PhotonConfig&) const = default;

 private:
  std::vector<int> counts_;
};

/// Photon-number distribution of a single input mode with finite support.
/// The support cap is the largest count carrying non-zero probability.
class ModeDistribution {
 public:
  /// (count, probability) pairs; counts may be listed in any order but not
  /// repeated. Probabilities must sum to one within 1e-12.
  static ModeDistribution from_pairs(std::span<const std::pair<int, double>> pairs);
  static ModeDistribution from_pairs(std::initializer_list<std::pair<int, double>> pairs);
  /// probabilities[k] = P(count = k).
  static ModeDistribution from_dense(std::vector<double> probabilities);
  /// (1 - p)|0><0| + p|1><1|
  static ModeDistribution two_level(double p);
  static ModeDistribution vacuum();

  int cap() const { return static_cast<int>(probs_.size()) - 1; }
  double probability(int count) const;
  std::span<const double> probabilities() const { return probs_; }
  bool is_vacuum() const { return cap() == 0; }

 private:
  explicit ModeDistribution(std::vector<double> probs);
  std::vector<double> probs_;
};

/// Product input state over N modes, each diagonal in the Fock basis.
class InputSpec {
 public:
  explicit InputSpec(std::vector<ModeDistribution> modes);

  static InputSpec two_level(std::span<const double> efficiencies);
  static InputSpec two_level(std::initializer_list<double> efficiencies);
  static InputSpec uniform_two_level(std::size_t n_modes, double p);

  std::size_t n_modes() const { return modes_.size(); }
  const ModeDistribution& mode(std::size_t i) const { return modes_.at(i); }
  std::span<const ModeDistribution> modes() const { return modes_; }

  /// Largest single-photon probability over the modes.
  double p_max() const;
  /// Number of modes that are not a point mass at vacuum.
  int active_modes() const;
  /// Sum of the per-mode support caps.
  int max_total_photons() const;
  /// True when every mode has support within {0, 1}.
  bool is_two_level() const;

  /// Prod_i P_i(s_i) / s_i!; zero when s leaves some mode's support.
  double weight(const PhotonConfig& s) const;

 private:
  std::vector<ModeDistribution> modes_;
};

struct WeightedConfig {
  PhotonConfig config;
  double weight = 0.0;
};

/// Visits every input configuration with the given total photon number and
/// non-zero weight, in ascending lexicographic order of the counts vector.
void for_each_input(const InputSpec& spec, int total_photons,
                    const std::function<void(const PhotonConfig&, double)>& visit);

std::vector<WeightedConfig> enumerate_inputs(const InputSpec& spec, int total_photons);

/// All occupation vectors over n_modes with the given total, ascending
/// lexicographic order.
std::vector<PhotonConfig> compositions(std::size_t n_modes, int total_photons);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean and variance of a photon-number distribution given as (n, probability)
/// pairs. Throws NotNormalized when the probabilities do not sum to one within
/// 1e-9.
Moments distribution_moments(std::span<const std::pair<int, double>> coefficients);
/// Same, with probabilities[n] = P(n).
Moments distribution_moments(std::span<const double> probabilities);

}  // namespace lopp

#endif  // LOPP_FOCK_HPP
