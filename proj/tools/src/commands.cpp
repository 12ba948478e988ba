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

#include "lopp_cli/commands.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "lopp/detectors.hpp"
#include "lopp/merit.hpp"
#include "lopp/parallel.hpp"
#include "lopp/schemes.hpp"
#include "lopp/search.hpp"
#include "lopp_cli/config.hpp"

namespace lopp::cli {

namespace {

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// Re-labels library argument errors raised while reading `field`.
template <typename F>
auto as_config(const std::string& field, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const lopp::InvalidArgument& e) {
    throw ConfigError(field, e.what());
  }
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header) {
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << "\n";
  }
  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << csv_number(values[i]);
    out_ << "\n";
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> out;
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    out.push_back(std::pow(10.0, lo + t * (hi - lo)));
  }
  return out;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  std::vector<double> out;
  for (int i = 0; i < points; ++i) out.push_back(lo + i * (hi - lo) / (points - 1));
  return out;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

InputSpec read_inputs(ConfigObject& c) {
  const auto& raw = c.raw("inputs");
  const nlohmann::json inputs = raw.is_null() ? nlohmann::json::array({0.2, 0.2}) : raw;
  if (!inputs.is_array() || inputs.empty()) {
    throw ConfigError("inputs", "expected a non-empty array");
  }
  std::vector<ModeDistribution> modes;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const std::string field = "inputs[" + std::to_string(i) + "]";
    const auto& v = inputs[i];
    if (v.is_number()) {
      modes.push_back(as_config(field, [&] { return ModeDistribution::two_level(v.get<double>()); }));
    } else if (v.is_array()) {
      std::vector<double> dense;
      for (const auto& x : v) {
        if (!x.is_number()) throw ConfigError(field, "expected numbers");
        dense.push_back(x.get<double>());
      }
      modes.push_back(as_config(field, [&] { return ModeDistribution::from_dense(dense); }));
    } else {
      throw ConfigError(field, "expected p or an array of photon-number probabilities");
    }
  }
  return InputSpec(std::move(modes));
}

Interferometer read_interferometer(ConfigObject& root, int n_modes,
                                   const std::optional<std::uint64_t>& seed_override) {
  if (!root.has("interferometer")) {
    root.raw("interferometer");
    if (n_modes != 2) throw ConfigError("interferometer", "required when there are not 2 modes");
    return beam_splitter(std::numbers::pi / 4, 0.0);
  }
  ConfigObject c = root.object("interferometer");
  const std::string type = c.string("type", "");
  Interferometer u = Interferometer::identity(1);
  if (type == "beam_splitter") {
    const double theta = c.number("theta");
    const double phi = c.number("phi", 0.0);
    const std::vector<int> modes = c.integers("modes", {1, 2});
    if (modes.size() != 2) throw ConfigError(c.path_of("modes"), "expected two mode numbers");
    u = embed_two_mode(beam_splitter(theta, phi), modes[0] - 1, modes[1] - 1, n_modes);
  } else if (type == "chain") {
    const double eps = c.number("epsilon");
    u = as_config(c.path_of("epsilon"), [&] { return build_chain(n_modes, eps).interferometer; });
  } else if (type == "haar") {
    const std::uint64_t seed = c.seed("seed", 1);
    u = haar_random(n_modes, seed_override.value_or(seed));
  } else if (type == "identity") {
    u = Interferometer::identity(n_modes);
  } else if (type == "matrix") {
    nlohmann::json m = {{"n_modes", n_modes}, {"matrix", c.raw("matrix")}};
    u = as_config(c.path_of("matrix"), [&] { return interferometer_from_json(m); });
  } else {
    throw ConfigError(c.path_of("type"),
                      "expected beam_splitter, chain, haar, identity or matrix");
  }
  c.finish();
  if (u.n_modes() != n_modes) {
    throw DimensionMismatch("interferometer has " + std::to_string(u.n_modes()) +
                            " modes but inputs have " + std::to_string(n_modes));
  }
  return u;
}

DetectorModel read_detector(const nlohmann::json& v, const std::string& field, int max_true) {
  if (v.is_object()) return as_config(field, [&] { return detector_from_json(v); });
  if (!v.is_string()) throw ConfigError(field, "expected a preset name or a response object");
  const std::string name = v.get<std::string>();
  const auto colon = name.find(':');
  const std::string kind = name.substr(0, colon);
  int threshold = 0;
  if (colon != std::string::npos) {
    try {
      threshold = std::stoi(name.substr(colon + 1));
    } catch (const std::exception&) {
      throw ConfigError(field, "bad threshold in '" + name + "'");
    }
  }
  return as_config(field, [&]() -> DetectorModel {
    if (kind == "ideal" && colon == std::string::npos) return DetectorModel::ideal(max_true);
    if (kind == "lossy" && colon == std::string::npos) return lossy_detector(max_true);
    if (kind == "bucket" && colon != std::string::npos) return DetectorModel::bucket(threshold, max_true);
    if (kind == "dark_bucket" && colon != std::string::npos) {
      return dark_count_bucket_detector(threshold, max_true);
    }
    throw ConfigError(field, "unknown detector preset '" + name + "'");
  });
}

std::vector<Artifact> cmd_simulate(ConfigObject& c, const CommandOptions& opt) {
  const InputSpec spec = read_inputs(c);
  const int n = static_cast<int>(spec.n_modes());
  if (n < 2) throw ConfigError("inputs", "need at least two modes");
  const Interferometer u = read_interferometer(c, n, opt.seed);

  nlohmann::json out;
  out["command"] = "simulate";
  out["n_modes"] = n;
  out["interferometer"] = to_json(u);

  ConditionalResult result;
  if (c.has("observed")) {
    if (c.has("pattern")) throw ConfigError("pattern", "give either pattern or observed");
    const auto labels = c.strings("observed", {});
    ObservedPattern observed;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      observed.push_back(as_config("observed[" + std::to_string(i) + "]",
                                   [&] { return Outcome::parse(labels[i]); }));
    }
    const auto& raw = c.raw("detectors");
    if (!raw.is_array()) throw ConfigError("detectors", "required array with one entry per detector");
    std::vector<DetectorModel> models;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      models.push_back(read_detector(raw[i], "detectors[" + std::to_string(i) + "]",
                                     spec.max_total_photons()));
    }
    result = observe(spec, u, observed, models);
    out["observed"] = labels;
  } else {
    const auto pattern = c.integers("pattern", std::vector<int>(static_cast<std::size_t>(n - 1), 0));
    const DetectionPattern dp = as_config("pattern", [&] { return DetectionPattern(pattern); });
    result = condition_mixed(spec, u, dp);
    out["pattern"] = pattern;
  }
  c.finish();

  out["detected"] = result.detected >= 0 ? nlohmann::json(result.detected) : nlohmann::json(nullptr);
  out["pattern_probability"] = result.pattern_probability;
  out["unnormalized"] = result.unnormalized;
  out["normalized"] = result.normalized;
  out["merit"] = result.defined() ? to_json(figures_of_merit(result, spec)) : nlohmann::json(nullptr);
  return {{"", dump(out)}};
}

// ---------------------------------------------------------------------------
// pure-landscape
// ---------------------------------------------------------------------------

std::vector<Artifact> cmd_pure_landscape(ConfigObject& c, const CommandOptions& opt) {
  const double pi = std::numbers::pi;
  const double theta_min = c.number("theta_min", 0.0);
  const double theta_max = c.number("theta_max", pi);
  const int theta_points = c.integer("theta_points", 181);
  const double phi_min = c.number("phi_min", 0.0);
  const double phi_max = c.number("phi_max", pi);
  const int phi_points = c.integer("phi_points", 181);
  const double beta = c.number("beta", 1.0);
  c.finish();
  if (theta_points < 2) throw ConfigError("theta_points", "need at least 2 grid points");
  if (phi_points < 2) throw ConfigError("phi_points", "need at least 2 grid points");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ConfigError("beta", "|beta| must lie in [0, 1]");

  const auto thetas = linear_grid(theta_min, theta_max, theta_points);
  const auto phis = linear_grid(phi_min, phi_max, phi_points);
  std::vector<double> values(thetas.size() * phis.size());
  parallel_for(static_cast<int>(thetas.size()), opt.threads, [&](int i) {
    for (std::size_t k = 0; k < phis.size(); ++k) {
      double p = 0.0;
      try {
        p = pure_success_probability(thetas[i], phis[k], beta);
      } catch (const DegenerateTheta&) {
        p = pure_success_probability_eliminated(thetas[i], phis[k], beta);
      }
      values[i * phis.size() + k] = p;
    }
  });
  CsvWriter csv({"theta", "phi", "probability"});
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    for (std::size_t k = 0; k < phis.size(); ++k) {
      csv.row({thetas[i], phis[k], values[i * phis.size() + k]});
    }
  }
  return {{"", csv.str()}};
}

// ---------------------------------------------------------------------------
// exp-sweep
// ---------------------------------------------------------------------------

std::vector<double> read_epsilons(ConfigObject& c, const std::vector<double>& fallback_log) {
  if (c.has("epsilons")) {
    for (const char* k : {"epsilon_log10_min", "epsilon_log10_max", "epsilon_points"}) {
      if (c.has(k)) throw ConfigError(k, "give either epsilons or a log grid");
    }
    const auto eps = c.numbers("epsilons", {});
    for (double e : eps) {
      if (!(e > 0.0 && e < 1.0)) throw ConfigError("epsilons", "every epsilon must lie in (0, 1)");
    }
    if (eps.empty()) throw ConfigError("epsilons", "must not be empty");
    return eps;
  }
  const double lo = c.number("epsilon_log10_min", fallback_log[0]);
  const double hi = c.number("epsilon_log10_max", fallback_log[1]);
  const int points = c.integer("epsilon_points", static_cast<int>(fallback_log[2]));
  if (points < 1) throw ConfigError("epsilon_points", "need at least one point");
  if (!(hi < 0.0) || !(lo <= hi)) {
    throw ConfigError("epsilon_log10_max", "need epsilon_log10_min <= epsilon_log10_max < 0");
  }
  return log_grid(lo, hi, points);
}

std::vector<Artifact> cmd_exp_sweep(ConfigObject& c, const CommandOptions& opt) {
  ScenarioConfig sc;
  sc.n_modes = c.integer("n_modes", 4);
  sc.p_max = c.number("p_max", 0.2);
  sc.detected = c.integer("detected", 0);
  sc.two_photon_probability = c.number("two_photon_probability", 0.001);
  std::vector<std::string> all;
  for (Scenario s : all_scenarios()) all.emplace_back(scenario_name(s));
  const auto names = c.strings("scenarios", all);
  const auto eps = read_epsilons(c, {-3.5, -0.2, 34});
  c.finish();
  if (sc.n_modes < 3) throw ConfigError("n_modes", "the chain needs at least 3 modes");
  if (!(sc.p_max > 0.0 && sc.p_max < 1.0)) throw ConfigError("p_max", "must lie in (0, 1)");
  if (sc.detected < 0 || sc.detected >= sc.n_modes) {
    throw ConfigError("detected", "must lie in [0, n_modes - 1]");
  }
  if (!(sc.two_photon_probability >= 0.0 && sc.two_photon_probability <= 1.0 - sc.p_max)) {
    throw ConfigError("two_photon_probability", "must lie in [0, 1 - p_max]");
  }
  std::vector<Scenario> scenarios;
  for (const auto& name : names) {
    const auto s = parse_scenario(name);
    if (!s) throw ConfigError("scenarios", "unknown scenario '" + name + "'");
    scenarios.push_back(*s);
  }

  std::vector<Artifact> out;
  for (Scenario s : scenarios) {
    std::vector<ConditionalResult> results(eps.size());
    parallel_for(static_cast<int>(eps.size()), opt.threads,
                 [&](int i) { results[i] = run_scenario(s, sc, eps[i]); });
    CsvWriter csv({"epsilon", "pattern_probability", "conditional_c1"});
    for (std::size_t i = 0; i < eps.size(); ++i) {
      csv.row({eps[i], results[i].pattern_probability, results[i].probability(1)});
    }
    out.push_back({exp_sweep_filename(scenario_name(s)), csv.str()});
  }
  return out;
}

// ---------------------------------------------------------------------------
// chain-sweep
// ---------------------------------------------------------------------------

std::vector<Artifact> cmd_chain_sweep(ConfigObject& c, const CommandOptions& opt) {
  const auto sizes = c.integers("n_modes", {4, 5, 6, 8});
  const std::string which = c.string("detected", "half");
  const double p = c.number("p_max", 0.01);
  const auto eps = read_epsilons(c, {-4.0, -2.0, 3});
  c.finish();
  if (which != "half" && which != "all") throw ConfigError("detected", "expected 'half' or 'all'");
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("p_max", "must lie in (0, 1)");
  for (int n : sizes) {
    if (n < 3 || n > 12) throw ConfigError("n_modes", "each N must lie in [3, 12]");
  }

  struct Point {
    int n;
    int d;
    double eps;
  };
  std::vector<Point> points;
  for (int n : sizes) {
    const int lo = which == "half" ? (n + 1) / 2 : 1;
    const int hi = which == "half" ? (n + 1) / 2 : n - 1;
    for (int d = lo; d <= hi; ++d) {
      for (double e : eps) points.push_back({n, d, e});
    }
  }
  std::vector<std::vector<double>> rows(points.size());
  parallel_for(static_cast<int>(points.size()), opt.threads, [&](int i) {
    const Point& pt = points[i];
    const ChainScheme chain = build_chain(pt.n, pt.eps);
    const InputSpec spec = InputSpec::uniform_two_level(pt.n, p);
    const ConditionalResult r = condition_mixed(spec, chain.interferometer, chain.pattern_for(pt.d));
    const MeritReport m = figures_of_merit(r, spec);
    const ChainAsymptotics a = chain_asymptotics(pt.n, pt.d);
    const double nan = std::nan("");
    rows[i] = {static_cast<double>(pt.n), static_cast<double>(pt.d), pt.eps, p,
               r.pattern_probability, m.c0, m.c1, m.c2,
               m.r_out_infinite ? nan : m.r_out / m.r_in, a.r_factor,
               m.g_out_undefined ? nan : m.g_out, a.g_value,
               m.pi_out_undefined ? nan : m.pi_out, m.pi_in};
  });
  CsvWriter csv({"n_modes", "detected", "epsilon", "p_max", "pattern_probability", "c0", "c1",
                 "c2", "r_out_over_r_in", "r_asymptote", "g_out", "g_asymptote", "pi_out",
                 "pi_in"});
  for (const auto& row : rows) csv.row(row);
  return {{"", csv.str()}};
}

// ---------------------------------------------------------------------------
// nogo-verify and search
// ---------------------------------------------------------------------------

std::vector<Artifact> cmd_nogo_verify(ConfigObject& c, const CommandOptions& opt) {
  const std::string mode = c.string("mode", "small");
  const int n = c.integer("n_modes", 3);
  const double p = c.number("p_max", 0.2);
  const int budget = c.integer("budget", 1000);
  const std::uint64_t seed = opt.seed.value_or(c.seed("seed", 1));
  c.finish();
  if (budget < 1) throw ConfigError("budget", "must be at least 1");
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("p_max", "must lie in (0, 1)");
  SearchReport report;
  if (mode == "small") {
    if (n != 2 && n != 3) throw ConfigError("n_modes", "mode 'small' needs 2 or 3 modes");
    report = verify_nogo_small(n, p, budget, seed, opt.threads);
  } else if (mode == "patterns") {
    if (n < 2 || n > 8) throw ConfigError("n_modes", "must lie in [2, 8]");
    report = verify_nogo_patterns(n, p, budget, seed, opt.threads);
  } else {
    throw ConfigError("mode", "expected 'small' or 'patterns'");
  }
  nlohmann::json j = to_json(report);
  j["command"] = "nogo-verify";
  j["mode"] = mode;
  return {{"", dump(j)}};
}

std::vector<Artifact> cmd_search(ConfigObject& c, const CommandOptions& opt) {
  SearchTask t;
  t.n_modes = c.integer("n_modes", t.n_modes);
  t.p_max = c.number("p_max", t.p_max);
  const std::string objective = c.string("objective", std::string(objective_name(t.objective)));
  t.trials = c.integer("trials", t.trials);
  t.refine_top = c.integer("refine_top", t.refine_top);
  t.refine_evaluations = c.integer("refine_evaluations", t.refine_evaluations);
  t.seed = opt.seed.value_or(c.seed("seed", t.seed));
  t.include_chain_seed = c.boolean("include_chain_seed", t.include_chain_seed);
  t.chain_epsilon = c.number("chain_epsilon", t.chain_epsilon);
  t.min_pattern_probability = c.number("min_pattern_probability", t.min_pattern_probability);
  t.g_tolerance = c.number("g_tolerance", t.g_tolerance);
  t.only_detected = c.integer("only_detected", t.only_detected);
  c.finish();
  const auto parsed = parse_objective(objective);
  if (!parsed) throw ConfigError("objective", "expected max_c1, max_r_out or max_c1_zero_g");
  t.objective = *parsed;
  if (t.n_modes > 8) throw ConfigError("n_modes", "must be at most 8");
  t.threads = opt.threads;
  as_config("search", [&] { validate(t); });
  nlohmann::json j = to_json(search_improvement(t));
  j["command"] = "search";
  return {{"", dump(j)}};
}

}  // namespace

std::string csv_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string exp_sweep_filename(std::string_view scenario) {
  std::string slug;
  for (char ch : scenario) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      slug += ch;
    } else if (!slug.empty() && slug.back() != '_') {
      slug += '_';
    }
  }
  while (!slug.empty() && slug.back() == '_') slug.pop_back();
  return "exp_sweep_" + slug + ".csv";
}

const std::vector<std::string_view>& command_names() {
  static const std::vector<std::string_view> names{
      "simulate", "pure-landscape", "exp-sweep", "chain-sweep", "nogo-verify", "search"};
  return names;
}

std::vector<Artifact> execute(std::string_view command, const nlohmann::json& config,
                              const CommandOptions& options) {
  const std::string name(command);
  const nlohmann::json root =
      config.is_null() ? nlohmann::json{{"command", name}, {"version", kConfigVersion}} : config;
  ConfigObject c = open_config(root, name);
  if (name == "simulate") return cmd_simulate(c, options);
  if (name == "pure-landscape") return cmd_pure_landscape(c, options);
  if (name == "exp-sweep") return cmd_exp_sweep(c, options);
  if (name == "chain-sweep") return cmd_chain_sweep(c, options);
  if (name == "nogo-verify") return cmd_nogo_verify(c, options);
  if (name == "search") return cmd_search(c, options);
  throw ConfigError("command", "unknown command '" + name + "'");
}

}  // namespace lopp::cli
