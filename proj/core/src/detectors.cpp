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

#include "lopp/detectors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>

#include "lopp/errors.hpp"
#include "lopp/schemes.hpp"

namespace lopp {

namespace {

constexpr double kRowTolerance = 1e-12;
constexpr double kOneMissed = 0.1;
constexpr double kOneToBucket = 1e-3;
constexpr double kVacuumToBucket = 1e-6;

}  // namespace

std::string Outcome::label() const {
  return (at_least ? ">=" : "") + std::to_string(count);
}

Outcome Outcome::parse(std::string_view label) {
  Outcome o;
  if (label.starts_with(">=")) {
    o.at_least = true;
    label.remove_prefix(2);
  }
  const auto* end = label.data() + label.size();
  const auto [ptr, ec] = std::from_chars(label.data(), end, o.count);
  if (ec != std::errc() || ptr != end || o.count < 0 || label.empty()) {
    throw InvalidArgument("Outcome: cannot parse '" + std::string(label) + "'");
  }
  return o;
}

DetectorModel::DetectorModel(std::vector<Outcome> alphabet,
                             std::vector<std::vector<double>> response)
    : alphabet_(std::move(alphabet)), response_(std::move(response)) {
  if (alphabet_.empty()) throw InvalidArgument("DetectorModel: empty alphabet");
  if (response_.empty()) throw InvalidArgument("DetectorModel: no response rows");
  for (std::size_t a = 0; a < alphabet_.size(); ++a) {
    for (std::size_t b = a + 1; b < alphabet_.size(); ++b) {
      if (alphabet_[a] == alphabet_[b]) throw InvalidArgument("DetectorModel: repeated outcome");
    }
  }
  for (std::size_t t = 0; t < response_.size(); ++t) {
    const auto& row = response_[t];
    if (row.size() != alphabet_.size()) {
      throw InvalidArgument("DetectorModel: row " + std::to_string(t) + " has wrong length");
    }
    double sum = 0.0;
    for (double p : row) {
      if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("DetectorModel: entry outside [0, 1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowTolerance) {
      throw InvalidArgument("DetectorModel: row " + std::to_string(t) + " sums to " +
                            std::to_string(sum));
    }
  }
}

DetectorModel DetectorModel::ideal(int max_true) {
  std::vector<Outcome> alphabet;
  for (int n = 0; n <= max_true; ++n) alphabet.push_back(Outcome::exactly(n));
  std::vector<std::vector<double>> rows(max_true + 1, std::vector<double>(max_true + 1, 0.0));
  for (int t = 0; t <= max_true; ++t) rows[t][t] = 1.0;
  return DetectorModel(std::move(alphabet), std::move(rows));
}

DetectorModel DetectorModel::bucket(int threshold, int max_true) {
  if (threshold < 1) throw InvalidArgument("bucket: threshold must be >= 1");
  std::vector<Outcome> alphabet;
  for (int n = 0; n < threshold; ++n) alphabet.push_back(Outcome::exactly(n));
  alphabet.push_back(Outcome::or_more(threshold));
  std::vector<std::vector<double>> rows(max_true + 1, std::vector<double>(alphabet.size(), 0.0));
  for (int t = 0; t <= max_true; ++t) rows[t][std::min(t, threshold)] = 1.0;
  return DetectorModel(std::move(alphabet), std::move(rows));
}

std::optional<std::size_t> DetectorModel::find(const Outcome& outcome) const {
  const auto it = std::find(alphabet_.begin(), alphabet_.end(), outcome);
  if (it == alphabet_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - alphabet_.begin());
}

double DetectorModel::probability(const Outcome& outcome, int true_count) const {
  if (true_count < 0 || true_count > max_true()) return 0.0;
  const auto idx = find(outcome);
  return idx ? response_[true_count][*idx] : 0.0;
}

DetectorModel lossy_detector(int max_true) {
  DetectorModel base = DetectorModel::ideal(max_true);
  auto rows = base.response();
  for (int t = 1; t <= max_true; ++t) {
    const double missed = std::pow(kOneMissed, t);
    rows[t][0] = missed;
    rows[t][t] = 1.0 - missed;
  }
  return DetectorModel(base.alphabet(), std::move(rows));
}

DetectorModel dark_count_bucket_detector(int threshold, int max_true) {
  DetectorModel base = DetectorModel::bucket(threshold, max_true);
  auto rows = base.response();
  const std::size_t bucket = rows[0].size() - 1;
  auto lift = [&](int t, double p) {
    if (t < 0 || t > max_true) return;
    rows[t][t] -= p;
    rows[t][bucket] += p;
  };
  lift(threshold - 1, kOneToBucket);
  lift(threshold - 2, kVacuumToBucket);
  return DetectorModel(base.alphabet(), std::move(rows));
}

DetectorSuite paper_detector_suite(int max_true) {
  return {lossy_detector(max_true), dark_count_bucket_detector(2, max_true)};
}

ConditionalResult observe(const InputSpec& spec, const Interferometer& interf,
                          const ObservedPattern& observed,
                          const std::vector<DetectorModel>& models) {
  const std::size_t n_detectors = spec.n_modes() - 1;
  if (static_cast<std::size_t>(interf.n_modes()) != spec.n_modes()) {
    throw DimensionMismatch("observe: interferometer and inputs disagree on mode count");
  }
  if (observed.size() != n_detectors || models.size() != n_detectors) {
    throw DimensionMismatch("observe: need one outcome and one detector for each of modes 2.." +
                            std::to_string(spec.n_modes()));
  }
  const int max_total = spec.max_total_photons();
  for (std::size_t j = 0; j < n_detectors; ++j) {
    if (models[j].max_true() < max_total) {
      throw DimensionMismatch("observe: detector on mode " + std::to_string(j + 2) +
                              " only covers " + std::to_string(models[j].max_true()) +
                              " photons");
    }
    if (!models[j].find(observed[j])) {
      throw DimensionMismatch("observe: outcome " + observed[j].label() +
                              " is not reported by the detector on mode " +
                              std::to_string(j + 2));
    }
  }

  struct Term {
    double weight;
    ConditionalResult result;
  };
  std::vector<Term> terms;
  std::vector<int> truth(n_detectors, 0);
  std::function<void(std::size_t, int, double)> recurse = [&](std::size_t j, int left,
                                                              double weight) {
    if (j == n_detectors) {
      terms.push_back({weight, condition_mixed(spec, interf, DetectionPattern(truth))});
      return;
    }
    for (int t = 0; t <= left; ++t) {
      const double w = models[j].probability(observed[j], t);
      if (w == 0.0) continue;
      truth[j] = t;
      recurse(j + 1, left - t, weight * w);
    }
    truth[j] = 0;
  };
  recurse(0, max_total, 1.0);

  int min_d = std::numeric_limits<int>::max();
  int max_d = -1;
  for (const auto& term : terms) {
    min_d = std::min(min_d, term.result.detected);
    max_d = std::max(max_d, term.result.detected);
  }
  if (terms.empty()) return ConditionalResult::from_unnormalized({0.0}, -1);

  std::vector<double> mixed(static_cast<std::size_t>(max_total - min_d) + 1, 0.0);
  for (const auto& term : terms) {
    for (std::size_t n = 0; n < term.result.unnormalized.size(); ++n) {
      mixed[n] += term.weight * term.result.unnormalized[n];
    }
  }
  return ConditionalResult::from_unnormalized(std::move(mixed), min_d == max_d ? min_d : -1);
}

std::string_view scenario_name(Scenario s) {
  switch (s) {
    case Scenario::kIdeal:
      return "ideal";
    case Scenario::kBucket:
      return "bucket";
    case Scenario::kBucketEfficiency:
      return "bucket+efficiency";
    case Scenario::kDarkCounts:
      return "+darkcounts";
    case Scenario::kTwoPhotonInputs:
      return "+two-photon-inputs";
  }
  return "unknown";
}

std::optional<Scenario> parse_scenario(std::string_view name) {
  for (Scenario s : all_scenarios()) {
    if (scenario_name(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<Scenario> all_scenarios() {
  return {Scenario::kIdeal, Scenario::kBucket, Scenario::kBucketEfficiency, Scenario::kDarkCounts,
          Scenario::kTwoPhotonInputs};
}

ConditionalResult run_scenario(Scenario scenario, const ScenarioConfig& config, double epsilon) {
  const int n = config.n_modes;
  const int d = config.detected > 0 ? config.detected : (n + 1) / 2;
  const ChainScheme chain = build_chain(n, epsilon);

  const bool two_photon = scenario == Scenario::kTwoPhotonInputs;
  const ModeDistribution source =
      two_photon ? ModeDistribution::from_dense({1.0 - config.p_max - config.two_photon_probability,
                                                 config.p_max, config.two_photon_probability})
                 : ModeDistribution::two_level(config.p_max);
  const InputSpec spec(std::vector<ModeDistribution>(n, source));
  const int max_true = spec.max_total_photons();

  ObservedPattern observed(n - 1, Outcome::exactly(0));
  std::vector<DetectorModel> models;
  switch (scenario) {
    case Scenario::kIdeal:
      observed[0] = Outcome::exactly(d);
      models.assign(n - 1, DetectorModel::ideal(max_true));
      break;
    case Scenario::kBucket:
      observed[0] = Outcome::or_more(d);
      models.assign(n - 1, DetectorModel::ideal(max_true));
      models[0] = DetectorModel::bucket(d, max_true);
      break;
    case Scenario::kBucketEfficiency:
    case Scenario::kTwoPhotonInputs:
      observed[0] = Outcome::or_more(d);
      models.assign(n - 1, lossy_detector(max_true));
      models[0] = DetectorModel::bucket(d, max_true);
      break;
    case Scenario::kDarkCounts:
      observed[0] = Outcome::or_more(d);
      models.assign(n - 1, lossy_detector(max_true));
      models[0] = dark_count_bucket_detector(d, max_true);
      break;
  }
  return observe(spec, chain.interferometer, observed, models);
}

nlohmann::json to_json(const DetectorModel& model) {
  nlohmann::json alphabet = nlohmann::json::array();
  for (const auto& o : model.alphabet()) alphabet.push_back(o.label());
  return {{"alphabet", alphabet}, {"response", model.response()}};
}

DetectorModel detector_from_json(const nlohmann::json& j) {
  try {
    std::vector<Outcome> alphabet;
    for (const auto& label : j.at("alphabet")) alphabet.push_back(Outcome::parse(label.get<std::string>()));
    auto response = j.at("response").get<std::vector<std::vector<double>>>();
    return DetectorModel(std::move(alphabet), std::move(response));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("detector json: ") + e.what());
  }
}

}  // namespace lopp
