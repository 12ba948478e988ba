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

#ifndef LOPP_CONDITIONER_HPP
#define LOPP_CONDITIONER_HPP

#include <functional>
#include <initializer_list>
#include <map>
#include <vector>

#include "lopp/fock.hpp"
#include "lopp/interferometer.hpp"

namespace lopp {

/// Exact photon counts registered on modes 2..N (indices 1..N-1).
class DetectionPattern {
 public:
  DetectionPattern() = default;
  explicit DetectionPattern(std::vector<int> counts) : counts_(std::move(counts)) {}
  DetectionPattern(std::initializer_list<int> counts) : counts_(counts) {}

  std::size_t size() const { return counts_.size(); }
  int operator[](std::size_t i) const { return counts_[i]; }
  const PhotonConfig& counts() const { return counts_; }
  /// Total number of detected photons.
  int detected() const { return counts_.total(); }

  /// Full output configuration (n1, n2, ..., nN).
  PhotonConfig with_output(int n1) const;

  bool operator==(const DetectionPattern&) const = default;

 private:
  PhotonConfig counts_;
};

/// Diagonal state of mode 1 after post-selection.
///
/// `unnormalized[n]` is the joint probability of the detection record and n
/// photons in mode 1, so the pattern probability is their sum.
struct ConditionalResult {
  std::vector<double> unnormalized;
  double pattern_probability = 0.0;
  std::vector<double> normalized;
  /// Total detected photons D for an exact pattern; -1 when the result mixes
  /// several detection records.
  int detected = -1;

  /// Normalises and clamps round-off negatives (down to -1e-14) to zero.
  static ConditionalResult from_unnormalized(std::vector<double> unnormalized, int detected);

  bool defined() const { return pattern_probability > 0.0; }
  /// normalized[n], or 0 beyond the cap.
  double probability(int n) const;
};

/// Conditions a product of diagonal inputs on an exact detection pattern.
///
///   c~[n1] = 1/(n1! prod_j n_j!) * sum_{s : |s| = D + n1} P'_s |per(L[n, s])|^2
///
/// with P'_s = prod_i P_i(s_i)/s_i!. The output cap is the maximum input
/// photon number minus D; a negative cap gives an all-zero result with
/// probability 0. A coefficient within the rounding error of its sum (judged
/// against the same sum over |L|) is reported as exactly 0, so records that
/// are impossible in exact arithmetic get probability 0. Throws
/// DimensionMismatch.
ConditionalResult condition_mixed(const InputSpec& spec, const Interferometer& interf,
                                  const DetectionPattern& pattern);

/// Two-mode specialisation written as an explicit double sum over input
/// photon numbers (k, l) with an inner sum over how the D detected photons
/// split between the two inputs. Mode 2 is detected.
ConditionalResult condition_mixed_bs_closed_form(const ModeDistribution& first,
                                                 const ModeDistribution& second,
                                                 const Interferometer& bs, int detected);

/// Called with every result produced by condition_mixed. Install once before
/// any concurrent use; the observer itself must be thread-safe.
using ResultObserver = std::function<void(const InputSpec&, const ConditionalResult&)>;
void set_result_observer(ResultObserver observer);

/// Pure state in the Fock basis over a fixed number of modes.
class PureState {
 public:
  explicit PureState(std::size_t n_modes) : n_modes_(n_modes) {}

  static PureState fock(const PhotonConfig& config);
  /// Tensor product of single-mode states; amplitudes[i][n] is the amplitude
  /// of n photons in mode i.
  static PureState product(const std::vector<std::vector<Complex>>& amplitudes);

  std::size_t n_modes() const { return n_modes_; }
  const std::map<PhotonConfig, Complex>& amplitudes() const { return amps_; }
  Complex amplitude(const PhotonConfig& config) const;
  void add(const PhotonConfig& config, Complex amplitude);

  double norm_squared() const;
  PureState normalized() const;
  /// This state's modes followed by other's modes.
  PureState tensor(const PureState& other) const;

 private:
  std::size_t n_modes_;
  std::map<PhotonConfig, Complex> amps_;
};

/// Applies the interferometer: <n|U|s> = per(L[n, s]) / sqrt(prod n! prod s!).
PureState propagate_pure(const PureState& state, const Interferometer& interf);

struct PureConditioning {
  /// Normalised single-mode state; empty when probability is 0.
  PureState mode_state{1};
  double probability = 0.0;
  bool defined() const { return probability > 0.0; }
};

/// Projects modes 2..N onto the pattern and renormalises mode 1.
PureConditioning condition_pure(const PureState& state, const DetectionPattern& pattern);

}  // namespace lopp

#endif  // LOPP_CONDITIONER_HPP
