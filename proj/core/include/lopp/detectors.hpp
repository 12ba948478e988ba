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

#ifndef LOPP_DETECTORS_HPP
#define LOPP_DETECTORS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lopp/conditioner.hpp"

namespace lopp {

/// What a detector reports: an exact count, or "count or more".
struct Outcome {
  int count = 0;
  bool at_least = false;

  static Outcome exactly(int n) { return {n, false}; }
  static Outcome or_more(int n) { return {n, true}; }

  /// "3" or ">=2"
  std::string label() const;
  static Outcome parse(std::string_view label);

  bool operator==(const Outcome&) const = default;
};

/// Classical response of a photodetector: P(reported outcome | true count)
/// for true counts 0..max_true. Rows are stochastic.
class DetectorModel {
 public:
  /// Throws InvalidArgument unless every row has one entry per outcome, all
  /// entries lie in [0, 1] and each row sums to 1 within 1e-12.
  DetectorModel(std::vector<Outcome> alphabet, std::vector<std::vector<double>> response);

  /// Perfect photon-number resolution up to max_true.
  static DetectorModel ideal(int max_true);
  /// Exact counts below `threshold`, a single "threshold or more" bucket above.
  static DetectorModel bucket(int threshold, int max_true);

  int max_true() const { return static_cast<int>(response_.size()) - 1; }
  const std::vector<Outcome>& alphabet() const { return alphabet_; }
  const std::vector<std::vector<double>>& response() const { return response_; }

  std::optional<std::size_t> find(const Outcome& outcome) const;
  /// P(outcome | true_count); 0 for outcomes outside the alphabet.
  double probability(const Outcome& outcome, int true_count) const;

 private:
  std::vector<Outcome> alphabet_;
  std::vector<std::vector<double>> response_;
};

/// Reported outcomes on modes 2..N.
using ObservedPattern = std::vector<Outcome>;

struct DetectorSuite {
  /// Used where vacuum is post-selected: 1, 2 and 3 photons go unreported
  /// with probability 0.1, 0.01 and 0.001 (0.1^t beyond), otherwise the
  /// count is reported as is.
  DetectorModel vacuum_detectors;
  /// Mode-2 bucket detector with dark counts: reports ">=2" for one photon
  /// with probability 1e-3 and for vacuum with probability 1e-6.
  DetectorModel mode2_detector;
};

DetectorSuite paper_detector_suite(int max_true = 8);

/// Inefficient detector with P(0 | t) = 0.1^t, all other reports truthful.
DetectorModel lossy_detector(int max_true);
/// Bucket at `threshold` with dark counts lifting threshold-1 photons (1e-3)
/// and threshold-2 photons (1e-6) into the bucket.
DetectorModel dark_count_bucket_detector(int threshold, int max_true);

/// Observed-outcome state: sum over true patterns t of
/// prod_j P(observed_j | t_j) * condition_mixed(t), kept unnormalised.
///
/// The output cap runs from the smallest contributing D; `detected` is set
/// when every contributing pattern has the same D. Throws DimensionMismatch
/// when models or outcomes do not cover modes 2..N, or a detector's max_true
/// is below the maximum input photon number.
ConditionalResult observe(const InputSpec& spec, const Interferometer& interf,
                          const ObservedPattern& observed, const std::vector<DetectorModel>& models);

/// Named detector/input configurations for the weak-coupling chain.
enum class Scenario {
  kIdeal,             // exact counts everywhere
  kBucket,            // mode 2 reports ">= D"
  kBucketEfficiency,  // plus lossy vacuum detectors
  kDarkCounts,        // plus dark counts on mode 2
  kTwoPhotonInputs,   // bucket + lossy, inputs with a two-photon term
};

std::string_view scenario_name(Scenario s);
std::optional<Scenario> parse_scenario(std::string_view name);
std::vector<Scenario> all_scenarios();

struct ScenarioConfig {
  int n_modes = 4;
  double p_max = 0.2;
  /// Photons post-selected on mode 2; 0 picks ceil(N / 2).
  int detected = 0;
  /// P(2) for kTwoPhotonInputs, taken from the vacuum probability.
  double two_photon_probability = 0.001;
};

/// Conditional state of the chain at one epsilon under a scenario.
ConditionalResult run_scenario(Scenario scenario, const ScenarioConfig& config, double epsilon);

nlohmann::json to_json(const DetectorModel& model);
DetectorModel detector_from_json(const nlohmann::json& j);

}  // namespace lopp

#endif  // LOPP_DETECTORS_HPP
