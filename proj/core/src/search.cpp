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

#include "lopp/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include "lopp/errors.hpp"
#include "lopp/parallel.hpp"
#include "lopp/schemes.hpp"

namespace lopp {

namespace {

constexpr double kImprovementTolerance = 1e-9;
constexpr double kSimplexStep = 0.2;
constexpr double kZeroGPenalty = 10.0;

struct Counters {
  long long evaluations = 0;
  long long violations = 0;
};

// Value reported to the user and the smoother score used by the optimizer.
struct Score {
  std::optional<double> value;
  double surrogate = -std::numeric_limits<double>::infinity();
};

Score score_result(const SearchTask& task, const ConditionalResult& result) {
  Score s;
  if (!(result.pattern_probability >= task.min_pattern_probability)) return s;
  const double c0 = result.probability(0);
  const double c1 = result.probability(1);
  const double c2 = result.probability(2);
  switch (task.objective) {
    case Objective::kMaxC1:
      s.value = c1;
      s.surrogate = c1;
      break;
    case Objective::kMaxROut:
      if (c0 > 0.0) {
        s.value = c1 / c0;
        s.surrogate = c1 / c0;
      }
      break;
    case Objective::kMaxC1ZeroG: {
      const bool zero_g = c1 > 0.0 && (c2 == 0.0 || c2 * c0 / (c1 * c1) <= task.g_tolerance);
      if (zero_g) s.value = c1;
      s.surrogate = c1 - kZeroGPenalty * c2;
      break;
    }
  }
  return s;
}

ConditionalResult run_pattern(const InputSpec& spec, const Interferometer& interf,
                              const DetectionPattern& pattern, Counters& counters) {
  ConditionalResult r = condition_mixed(spec, interf, pattern);
  ++counters.evaluations;
  if (!satisfies_ratio_bound(r, spec)) ++counters.violations;
  return r;
}

std::vector<DetectionPattern> candidate_patterns(const SearchTask& task) {
  std::vector<DetectionPattern> out;
  const int top = task.n_modes;  // M = N for uniform inputs
  for (int d = 0; d <= top; ++d) {
    if (task.only_detected >= 0 && d != task.only_detected) continue;
    for (const auto& c : compositions(static_cast<std::size_t>(task.n_modes - 1), d)) {
      out.emplace_back(std::vector<int>(c.counts().begin(), c.counts().end()));
    }
  }
  return out;
}

struct Candidate {
  Score score;
  Interferometer interf = Interferometer::identity(1);
  DetectionPattern pattern;
  int trial = 0;
  Counters counters;
};

// Best pattern for one interferometer; ties keep the earliest pattern.
Candidate evaluate_all_patterns(const SearchTask& task, const InputSpec& spec,
                                const std::vector<DetectionPattern>& patterns,
                                Interferometer interf, int trial) {
  Candidate best;
  best.trial = trial;
  for (const auto& pattern : patterns) {
    const Score s = score_result(task, run_pattern(spec, interf, pattern, best.counters));
    const double key = s.value.value_or(-std::numeric_limits<double>::infinity());
    const double best_key = best.score.value.value_or(-std::numeric_limits<double>::infinity());
    if (key > best_key || (!best.score.value && !s.value && s.surrogate > best.score.surrogate)) {
      best.score = s;
      best.pattern = pattern;
    }
  }
  best.interf = std::move(interf);
  return best;
}

bool better(const Candidate& a, const Candidate& b) {
  const double inf = std::numeric_limits<double>::infinity();
  const double va = a.score.value.value_or(-inf);
  const double vb = b.score.value.value_or(-inf);
  if (va != vb) return va > vb;
  if (a.score.surrogate != b.score.surrogate) return a.score.surrogate > b.score.surrogate;
  return a.trial < b.trial;
}

// Nelder-Mead maximisation of f from x0; stops after `budget` evaluations.
void nelder_mead(std::vector<double> x0, int budget,
                 const std::function<double(const std::vector<double>&)>& f) {
  const std::size_t n = x0.size();
  if (n == 0 || budget <= 0) return;
  const double worst = -std::numeric_limits<double>::infinity();
  int used = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++used;
    const double v = f(x);
    return std::isnan(v) ? worst : v;
  };

  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += kSimplexStep;
  for (std::size_t i = 0; i <= n && used < budget; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  while (used < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    const std::size_t best = order.front();
    const std::size_t low = order.back();
    const std::size_t second_low = order[n - 1];

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[order[i]][k] / n;
    }
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = centroid[k] + t * (simplex[low][k] - centroid[k]);
      return x;
    };

    auto reflected = along(-1.0);
    const double fr = eval(reflected);
    if (fr > values[best]) {
      auto expanded = along(-2.0);
      const double fe = used < budget ? eval(expanded) : worst;
      if (fe > fr) {
        simplex[low] = std::move(expanded);
        values[low] = fe;
      } else {
        simplex[low] = std::move(reflected);
        values[low] = fr;
      }
      continue;
    }
    if (fr > values[second_low]) {
      simplex[low] = std::move(reflected);
      values[low] = fr;
      continue;
    }
    auto contracted = fr > values[low] ? along(-0.5) : along(0.5);
    const double fc = used < budget ? eval(contracted) : worst;
    if (fc > std::max(fr, values[low])) {
      simplex[low] = std::move(contracted);
      values[low] = fc;
      continue;
    }
    // shrink towards the best vertex
    for (std::size_t i = 0; i <= n && used < budget; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) {
        simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
      }
      values[i] = eval(simplex[i]);
    }
  }
}

Candidate refine(const SearchTask& task, const InputSpec& spec, const Candidate& start) {
  Candidate best = start;
  const Interferometer base = start.interf;
  Counters counters;
  auto f = [&](const std::vector<double>& x) {
    Interferometer u = compose(base, rotation_network(task.n_modes, x));
    const Score s = score_result(task, run_pattern(spec, u, start.pattern, counters));
    Candidate c;
    c.score = s;
    c.trial = start.trial;
    if (better(c, best) && c.score.value) {
      best.score = s;
      best.interf = std::move(u);
    }
    return s.surrogate;
  };
  const std::size_t dims = static_cast<std::size_t>(task.n_modes) * (task.n_modes - 1);
  nelder_mead(std::vector<double>(dims, 0.0), task.refine_evaluations, f);
  best.counters.evaluations = start.counters.evaluations + counters.evaluations;
  best.counters.violations = start.counters.violations + counters.violations;
  return best;
}

double improvement_baseline(const SearchTask& task) {
  return task.objective == Objective::kMaxROut ? task.p_max / (1.0 - task.p_max) : task.p_max;
}

void finish_report(SearchReport& report, const InputSpec& spec) {
  if (!report.best_value) return;
  const ConditionalResult r =
      condition_mixed(spec, report.best_interferometer, report.best_pattern);
  if (r.defined()) report.best_merit = figures_of_merit(r, spec);
  report.improvement_found = *report.best_value > report.baseline + kImprovementTolerance;
  if (report.improvement_found && report.best_merit && report.best_merit->improvement_c1) {
    const double p0 = report.task.p_max;
    const std::vector<double> lower{0.75 * p0, 0.5 * p0, 0.25 * p0, 0.1 * p0};
    report.monotonicity_witness =
        c1_at_efficiencies(report.best_interferometer, report.best_pattern, lower);
    for (const auto& [p, c1] : report.monotonicity_witness) {
      if (!(c1 > p)) report.monotonicity_holds = false;
    }
  }
}

}  // namespace

std::string_view objective_name(Objective o) {
  switch (o) {
    case Objective::kMaxC1:
      return "max_c1";
    case Objective::kMaxROut:
      return "max_r_out";
    case Objective::kMaxC1ZeroG:
      return "max_c1_zero_g";
  }
  return "unknown";
}

std::optional<Objective> parse_objective(std::string_view name) {
  for (Objective o : {Objective::kMaxC1, Objective::kMaxROut, Objective::kMaxC1ZeroG}) {
    if (objective_name(o) == name) return o;
  }
  return std::nullopt;
}

void validate(const SearchTask& task) {
  if (task.n_modes < 2) throw BadParameters("search: n_modes must be at least 2");
  if (!(task.p_max > 0.0 && task.p_max < 1.0)) throw BadParameters("search: p_max must lie in (0, 1)");
  if (task.trials < 1) throw BadParameters("search: trials must be at least 1");
  if (task.refine_top < 0 || task.refine_evaluations < 0) {
    throw BadParameters("search: refinement budget must be non-negative");
  }
  if (task.include_chain_seed && !(task.chain_epsilon > 0.0 && task.chain_epsilon < 1.0)) {
    throw BadParameters("search: chain_epsilon must lie in (0, 1)");
  }
  if (task.only_detected > task.n_modes) throw BadParameters("search: only_detected exceeds N");
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  // splitmix64 over master + trial
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Interferometer rotation_network(int n_modes, std::span<const double> angles) {
  const std::size_t expected = static_cast<std::size_t>(n_modes) * (n_modes - 1);
  if (angles.size() != expected) {
    throw DimensionMismatch("rotation_network: expected " + std::to_string(expected) + " angles");
  }
  ComplexMatrix m = ComplexMatrix::Identity(n_modes, n_modes);
  std::size_t k = 0;
  for (int i = 0; i < n_modes; ++i) {
    for (int j = i + 1; j < n_modes; ++j, k += 2) {
      m = embed_two_mode(beam_splitter(angles[k], angles[k + 1]), i, j, n_modes).matrix() * m;
    }
  }
  return Interferometer(std::move(m), "rotation_network");
}

std::optional<double> evaluate_objective(const SearchTask& task, const Interferometer& interf,
                                         const DetectionPattern& pattern) {
  const InputSpec spec = InputSpec::uniform_two_level(task.n_modes, task.p_max);
  return score_result(task, condition_mixed(spec, interf, pattern)).value;
}

std::vector<std::pair<double, double>> c1_at_efficiencies(const Interferometer& interf,
                                                          const DetectionPattern& pattern,
                                                          std::span<const double> efficiencies) {
  std::vector<std::pair<double, double>> out;
  for (double p : efficiencies) {
    const InputSpec spec = InputSpec::uniform_two_level(interf.n_modes(), p);
    out.emplace_back(p, condition_mixed(spec, interf, pattern).probability(1));
  }
  return out;
}

std::string SearchReport::verdict() const {
  return improvement_found ? "improvement found" : "none found";
}

SearchReport search_improvement(const SearchTask& task) {
  validate(task);
  const InputSpec spec = InputSpec::uniform_two_level(task.n_modes, task.p_max);
  const auto patterns = candidate_patterns(task);

  std::vector<Candidate> trials(static_cast<std::size_t>(task.trials));
  parallel_for(task.trials, task.threads, [&](int i) {
    trials[i] = evaluate_all_patterns(task, spec, patterns,
                                      haar_random(task.n_modes, trial_seed(task.seed, i)), i);
  });
  if (task.include_chain_seed && task.n_modes >= 3) {
    trials.push_back(evaluate_all_patterns(
        task, spec, patterns, build_chain(task.n_modes, task.chain_epsilon).interferometer, -1));
  }

  SearchReport report;
  report.task = task;
  report.trials_run = task.trials;
  report.baseline = improvement_baseline(task);
  for (const auto& c : trials) {
    report.evaluations += c.counters.evaluations;
    report.bound_violations += c.counters.violations;
  }

  std::vector<std::size_t> order(trials.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return better(trials[a], trials[b]); });

  const int n_refine = std::min<int>(task.refine_top, static_cast<int>(order.size()));
  std::vector<Candidate> polished(static_cast<std::size_t>(n_refine));
  parallel_for(n_refine, task.threads, [&](int k) {
    Candidate start = trials[order[k]];
    start.counters = {};
    polished[k] = refine(task, spec, start);
  });

  const Candidate* best = &trials[order.front()];
  for (const auto& c : polished) {
    report.evaluations += c.counters.evaluations;
    report.bound_violations += c.counters.violations;
    if (better(c, *best)) {
      best = &c;
      report.refined = true;
    }
  }
  report.best_value = best->score.value;
  report.best_interferometer = best->interf;
  report.best_pattern = best->pattern;
  report.best_trial = best->trial;
  finish_report(report, spec);
  return report;
}

SearchReport verify_nogo_small(int n_modes, double p_max, int budget, std::uint64_t seed,
                               int threads) {
  if (n_modes != 2 && n_modes != 3) throw BadParameters("verify_nogo_small: N must be 2 or 3");
  SearchTask task;
  task.n_modes = n_modes;
  task.p_max = p_max;
  task.objective = Objective::kMaxC1;
  task.trials = budget;
  task.refine_top = 4;
  task.refine_evaluations = 300;
  task.seed = seed;
  task.threads = threads;
  return search_improvement(task);
}

SearchReport verify_nogo_patterns(int n_modes, double p_max, int budget, std::uint64_t seed,
                                  int threads) {
  SearchTask task;
  task.n_modes = n_modes;
  task.p_max = p_max;
  task.objective = Objective::kMaxROut;
  task.trials = budget;
  task.refine_top = 0;
  task.seed = seed;
  task.threads = threads;
  validate(task);

  struct TrialOutcome {
    double ratio = -1.0;
    Interferometer interf = Interferometer::identity(1);
    DetectionPattern pattern;
    std::vector<double> efficiencies;
    Counters counters;
  };
  const std::size_t detectors = static_cast<std::size_t>(n_modes - 1);
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(budget));

  parallel_for(budget, threads, [&](int t) {
    const std::uint64_t s = trial_seed(seed, t);
    std::mt19937_64 rng(s ^ 0xA5A5A5A5A5A5A5A5ULL);
    std::uniform_real_distribution<double> frac(0.05, 1.0);
    std::vector<double> unequal(n_modes);
    for (auto& p : unequal) p = p_max * frac(rng);
    unequal[std::uniform_int_distribution<int>(0, n_modes - 1)(rng)] = p_max;
    const Interferometer u = haar_random(n_modes, s);
    TrialOutcome& out = outcomes[t];

    auto check = [&](const InputSpec& spec, const DetectionPattern& pattern,
                     const std::vector<double>& eff) {
      const ConditionalResult r = run_pattern(spec, u, pattern, out.counters);
      if (!(r.pattern_probability >= task.min_pattern_probability)) return;
      const double c0 = r.probability(0);
      const double c1 = r.probability(1);
      const double r_in = spec.p_max() / (1.0 - spec.p_max());
      if (c1 > (r_in + kBoundTolerance) * c0) ++out.counters.violations;
      const double ratio = c0 > 0.0 ? (c1 / c0) / r_in : 0.0;
      if (ratio > out.ratio) {
        out.ratio = ratio;
        out.pattern = pattern;
        out.efficiencies = eff;
      }
    };

    const InputSpec mixed = InputSpec::two_level(unequal);
    check(mixed, DetectionPattern(std::vector<int>(detectors, 0)), unequal);
    for (const auto& c : compositions(detectors, n_modes - 1)) {
      check(mixed, DetectionPattern(std::vector<int>(c.counts().begin(), c.counts().end())),
            unequal);
    }
    const std::vector<double> equal(n_modes, p_max);
    const InputSpec uniform = InputSpec::two_level(equal);
    for (const auto& c : compositions(detectors, 1)) {
      check(uniform, DetectionPattern(std::vector<int>(c.counts().begin(), c.counts().end())),
            equal);
    }
    out.interf = u;
  });

  SearchReport report;
  report.task = task;
  report.trials_run = budget;
  report.baseline = 1.0;
  std::size_t best = 0;
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    report.evaluations += outcomes[t].counters.evaluations;
    report.bound_violations += outcomes[t].counters.violations;
    if (outcomes[t].ratio > outcomes[best].ratio) best = t;
  }
  report.max_ratio_over_r_in = outcomes[best].ratio;
  report.best_value = outcomes[best].ratio;
  report.best_interferometer = outcomes[best].interf;
  report.best_pattern = outcomes[best].pattern;
  report.best_trial = static_cast<int>(best);
  const InputSpec spec = InputSpec::two_level(outcomes[best].efficiencies);
  const ConditionalResult r = condition_mixed(spec, report.best_interferometer, report.best_pattern);
  if (r.defined()) report.best_merit = figures_of_merit(r, spec);
  report.improvement_found = report.bound_violations > 0;
  return report;
}

nlohmann::json to_json(const SearchReport& report) {
  const SearchTask& t = report.task;
  nlohmann::json j;
  j["task"] = {{"n_modes", t.n_modes},
               {"p_max", t.p_max},
               {"objective", objective_name(t.objective)},
               {"trials", t.trials},
               {"refine_top", t.refine_top},
               {"refine_evaluations", t.refine_evaluations},
               {"seed", t.seed},
               {"include_chain_seed", t.include_chain_seed},
               {"min_pattern_probability", t.min_pattern_probability}};
  j["verdict"] = report.verdict();
  j["improvement_found"] = report.improvement_found;
  j["baseline"] = report.baseline;
  j["best_value"] = report.best_value ? nlohmann::json(*report.best_value) : nlohmann::json(nullptr);
  j["best_trial"] = report.best_trial;
  j["refined"] = report.refined;
  j["best_pattern"] = std::vector<int>(report.best_pattern.counts().counts().begin(),
                                       report.best_pattern.counts().counts().end());
  j["best_interferometer"] = to_json(report.best_interferometer);
  j["best_merit"] = report.best_merit ? to_json(*report.best_merit) : nlohmann::json(nullptr);
  j["trials_run"] = report.trials_run;
  j["evaluations"] = report.evaluations;
  j["bound_violations"] = report.bound_violations;
  j["max_ratio_over_r_in"] = report.max_ratio_over_r_in;
  nlohmann::json witness = nlohmann::json::array();
  for (const auto& [p, c1] : report.monotonicity_witness) witness.push_back({{"p", p}, {"c1", c1}});
  j["monotonicity_witness"] = witness;
  j["monotonicity_holds"] = report.monotonicity_holds;
  return j;
}

}  // namespace lopp
