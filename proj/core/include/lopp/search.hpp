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

#ifndef LOPP_SEARCH_HPP
#define LOPP_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lopp/conditioner.hpp"
#include "lopp/interferometer.hpp"
#include "lopp/merit.hpp"

namespace lopp {

enum class Objective {
  kMaxC1,       // single-photon probability
  kMaxROut,     // c1 / c0
  kMaxC1ZeroG,  // c1 among results with G_out = 0
};

std::string_view objective_name(Objective o);
std::optional<Objective> parse_objective(std::string_view name);

struct SearchTask {
  int n_modes = 4;
  double p_max = 0.2;
  Objective objective = Objective::kMaxC1;
  /// Haar-random restarts.
  int trials = 1000;
  /// The best `refine_top` trials are polished with Nelder-Mead.
  int refine_top = 4;
  /// Objective evaluations allowed per refinement.
  int refine_evaluations = 400;
  std::uint64_t seed = 1;
  /// Start one extra candidate from the weak-coupling chain (N >= 3).
  bool include_chain_seed = false;
  double chain_epsilon = 1e-2;
  /// Patterns observed less often than this are ignored.
  double min_pattern_probability = 1e-12;
  /// G_out below this counts as zero for kMaxC1ZeroG.
  double g_tolerance = 1e-9;
  /// Restrict to patterns with this D (-1: every D up to M).
  int only_detected = -1;
  int threads = 1;
};

/// Throws BadParameters for invalid tasks (N < 2, p outside (0, 1), empty
/// budget).
void validate(const SearchTask& task);

/// Objective value of one interferometer and pattern under the task's
/// uniform two-level input, or nullopt when the pattern is too unlikely or
/// (for kMaxC1ZeroG) G_out is not zero.
std::optional<double> evaluate_objective(const SearchTask& task, const Interferometer& interf,
                                         const DetectionPattern& pattern);

struct SearchReport {
  SearchTask task;
  std::optional<double> best_value;
  Interferometer best_interferometer = Interferometer::identity(1);
  DetectionPattern best_pattern;
  /// Trial index of the best point; -1 for the chain seed.
  int best_trial = 0;
  bool refined = false;
  std::optional<MeritReport> best_merit;
  /// The value above which the objective counts as an improvement
  /// (p_max for c1, R_in for R_out).
  double baseline = 0.0;
  bool improvement_found = false;
  int trials_run = 0;
  long long evaluations = 0;
  long long bound_violations = 0;
  /// Largest (R_out / R_in) over every pattern checked, for the no-go runs.
  double max_ratio_over_r_in = 0.0;
  /// For an improvement: c1 of the best point re-evaluated at lower p_max.
  std::vector<std::pair<double, double>> monotonicity_witness;
  bool monotonicity_holds = true;

  /// "improvement found" or "none found" (no counterexample at this budget).
  std::string verdict() const;
};

/// Random restarts plus local refinement. U = V(x) U0 with U0 from a trial
/// and V(x) a product of two-mode rotations over every mode pair, V(0) = I.
/// The result depends only on the task (threads included or not).
SearchReport search_improvement(const SearchTask& task);

/// Exhaustive-pattern search with N in {2, 3}; no improvement is possible so
/// the verdict must be "none found". Throws BadParameters for other N.
SearchReport verify_nogo_small(int n_modes, double p_max, int budget, std::uint64_t seed,
                               int threads = 1);

/// Random trials restricted to the classes where R_out <= R_in is known:
/// D = 0 and D = M - 1 with unequal random efficiencies, and D = 1 with equal
/// inputs. max_ratio_over_r_in records the worst case.
SearchReport verify_nogo_patterns(int n_modes, double p_max, int budget, std::uint64_t seed,
                                  int threads = 1);

/// c1 of `pattern` through `interf` with N uniform two-level inputs at each p.
std::vector<std::pair<double, double>> c1_at_efficiencies(const Interferometer& interf,
                                                          const DetectionPattern& pattern,
                                                          std::span<const double> efficiencies);

/// Stream of per-trial seeds derived from one master seed.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

/// Product of BS(x[2k], x[2k+1]) over mode pairs (i < j) in lexicographic
/// order; x has N (N - 1) entries.
Interferometer rotation_network(int n_modes, std::span<const double> angles);

nlohmann::json to_json(const SearchReport& report);

}  // namespace lopp

#endif  // LOPP_SEARCH_HPP
