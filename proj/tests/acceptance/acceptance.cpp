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

// Acceptance gate: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "audit.hpp"
#include "generators.hpp"
#include "lopp/conditioner.hpp"
#include "lopp/detectors.hpp"
#include "lopp/merit.hpp"
#include "lopp/schemes.hpp"
#include "lopp/search.hpp"
#include "oracle.hpp"

namespace {

using namespace lopp;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

std::vector<DetectionPattern> all_patterns(int n_modes, int max_detected) {
  std::vector<DetectionPattern> out;
  for (int d = 0; d <= max_detected; ++d) {
    for (const auto& c : compositions(static_cast<std::size_t>(n_modes - 1), d)) {
      out.emplace_back(std::vector<int>(c.counts().begin(), c.counts().end()));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

// Maximises the landscape from a grid point by shrinking a local grid.
std::pair<double, double> polish_maximum(double theta, double phi, double step) {
  auto f = [](double t, double p) { return pure_success_probability_eliminated(t, p, 1.0); };
  while (step > 1e-12) {
    double bt = theta, bp = phi, bv = f(theta, phi);
    for (int i = -2; i <= 2; ++i) {
      for (int j = -2; j <= 2; ++j) {
        const double t = theta + i * step;
        const double p = std::clamp(phi + j * step, 0.0, kPi);
        if (f(t, p) > bv) {
          bv = f(t, p);
          bt = t;
          bp = p;
        }
      }
    }
    if (bt == theta && bp == phi) step *= 0.5;
    theta = bt;
    phi = bp;
  }
  return {theta, phi};
}

Verdict pure_scheme() {
  Verdict v;
  testing::Gen gen(1001);
  int done = 0;
  double worst_fid = 1.0, worst_prob = 0.0;
  while (done < 20) {
    const double theta = gen.uniform(0.0, kPi);
    const double phi = gen.uniform(0.0, kPi);
    if (std::abs(std::sin(2 * theta)) < 1e-2) continue;
    const double mag = gen.uniform(0.1, 1.0);
    const auto out = run_pure_scheme(theta, phi, std::polar(mag, gen.uniform(0.0, 2 * kPi)));
    worst_fid = std::min(worst_fid, out.fidelity);
    worst_prob = std::max(worst_prob, std::abs(out.probability - pure_success_probability(theta, phi, mag)));
    ++done;
  }
  v.require(worst_fid >= 1 - 1e-10, "fidelity");
  v.require(worst_prob <= 1e-10, "closed-form probability");
  const double p = pure_success_probability(kPi / 4, kPi, 1.0);
  v.require(std::abs(p - 16.0 / 81.0) <= 1e-12, "P(pi/4, pi) = 16/81");

  // grid over [0, pi]^2; the landscape depends on phi through cos(phi), so
  // neighbours across phi = 0 and phi = pi are mirror images
  const int n = 181;
  const double h = kPi / (n - 1);
  auto f = [](double t, double q) { return pure_success_probability_eliminated(t, q, 1.0); };
  std::vector<std::pair<double, double>> found;
  for (int i = 1; i < n - 1; ++i) {
    for (int j = 0; j < n; ++j) {
      const double value = f(i * h, j * h);
      if (value < 0.5 * 16.0 / 81.0) continue;
      bool peak = true;
      for (int di = -1; di <= 1 && peak; ++di) {
        for (int dj = -1; dj <= 1 && peak; ++dj) {
          if (di == 0 && dj == 0) continue;
          int jj = j + dj;
          if (jj < 0) jj = -jj;
          if (jj > n - 1) jj = 2 * (n - 1) - jj;
          if (f((i + di) * h, jj * h) > value) peak = false;
        }
      }
      if (!peak) continue;
      const auto [t, q] = polish_maximum(i * h, j * h, h);
      const bool seen = std::any_of(found.begin(), found.end(), [&](const auto& x) {
        return std::abs(x.first - t) < 1e-6 && std::abs(x.second - q) < 1e-6;
      });
      if (!seen) found.emplace_back(t, q);
    }
  }
  const std::vector<std::pair<double, double>> expected{{kPi / 4, kPi},
                                                        {kPi / 4, std::acos(13.0 / 14.0)},
                                                        {3 * kPi / 4, 0.0},
                                                        {3 * kPi / 4, std::acos(-13.0 / 14.0)}};
  v.require(found.size() == 4, "four maxima (found " + std::to_string(found.size()) + ")");
  for (const auto& [t, q] : expected) {
    const bool hit = std::any_of(found.begin(), found.end(), [&](const auto& x) {
      return std::abs(x.first - t) < 1e-3 && std::abs(x.second - q) < 1e-3;
    });
    v.require(hit, "maximum near (" + fmt("%.4f", t) + ", " + fmt("%.4f", q) + ")");
  }
  double lo = 1.0, hi = 0.0;
  for (const auto& [t, q] : found) {
    lo = std::min(lo, f(t, q));
    hi = std::max(hi, f(t, q));
  }
  v.require(hi - lo <= 1e-9, "equal heights");
  v.note("maxima " + std::to_string(found.size()) + ", height spread " + fmt("%.1e", hi - lo) +
         ", worst fidelity gap " + fmt("%.1e", 1 - worst_fid));
  return v;
}

Verdict beam_splitter_nogo() {
  Verdict v;
  const auto two = verify_nogo_small(2, 0.3, 10000, 2024);
  const auto three = verify_nogo_small(3, 0.2, 10000, 2025);
  v.require(*two.best_value <= 0.3 + 1e-9, "N=2 max c1");
  v.require(*three.best_value <= 0.2 + 1e-9, "N=3 max c1");
  v.require(two.verdict() == "none found" && three.verdict() == "none found", "verdicts");
  v.note("N=2 max c1 " + fmt("%.12f", *two.best_value) + ", N=3 max c1 " + fmt("%.12f", *three.best_value));
  return v;
}

Verdict chain_asymptotics_check() {
  Verdict v;
  double worst_r = 0.0, worst_g = 0.0, worst_pi = 1e300;
  for (int n : {4, 5, 6, 8}) {
    const int d = (n + 1) / 2;
    const auto chain = build_chain(n, 1e-3);
    const auto spec = InputSpec::uniform_two_level(n, 0.01);
    const auto m = figures_of_merit(condition_mixed(spec, chain.interferometer, chain.pattern_for(d)), spec);
    const auto a = chain_asymptotics(n, d);
    const double dr = std::abs(m.r_out / m.r_in - a.r_factor) / a.r_factor;
    const double dg = std::abs(m.g_out - a.g_value) / a.g_value;
    worst_r = std::max(worst_r, dr);
    worst_g = std::max(worst_g, dg);
    v.require(dr <= 0.01, "R factor at N=" + std::to_string(n));
    v.require(dg <= 0.01, "G at N=" + std::to_string(n));
  }
  for (int n = 4; n <= 8; ++n) {
    const auto chain = build_chain(n, 1e-3);
    for (double p : {0.01, 0.2}) {
      const auto spec = InputSpec::uniform_two_level(n, p);
      for (int d = 1; d < n; ++d) {
        const auto m = figures_of_merit(condition_mixed(spec, chain.interferometer, chain.pattern_for(d)), spec);
        worst_pi = std::min(worst_pi, m.pi_out - m.pi_in);
        v.require(m.pi_out >= m.pi_in - 1e-9, "Pi at N=" + std::to_string(n) + " D=" + std::to_string(d));
      }
    }
  }
  v.note("worst relative R error " + fmt("%.2e", worst_r) + ", G error " + fmt("%.2e", worst_g) +
         ", min Pi_out - Pi_in " + fmt("%.3e", worst_pi));
  return v;
}

Verdict oracle_equivalence() {
  Verdict v;
  testing::Gen gen(1003);
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const int n = gen.integer(2, 4);
    const InputSpec spec = rep % 2 ? gen.two_level_spec(n) : gen.multiphoton_spec(n, 4);
    const auto u = gen.unitary(n);
    const auto pattern = gen.pattern(n, spec.max_total_photons());
    const auto got = condition_mixed(spec, u, pattern);
    const auto expect = testing::brute_force_conditional(
        spec, u.matrix(), std::vector<int>(pattern.counts().counts().begin(), pattern.counts().counts().end()));
    if (got.unnormalized.size() != expect.size()) {
      v.require(false, "coefficient count");
      continue;
    }
    for (std::size_t k = 0; k < expect.size(); ++k) worst = std::max(worst, std::abs(got.unnormalized[k] - expect[k]));
  }
  double worst_closed = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const auto a = gen.distribution(gen.integer(0, 3));
    const auto b = gen.distribution(gen.integer(0, 3));
    const auto u = gen.unitary(2);
    const int d = gen.integer(0, a.cap() + b.cap());
    const auto x = condition_mixed_bs_closed_form(a, b, u, d);
    const auto y = condition_mixed(InputSpec({a, b}), u, {d});
    for (std::size_t k = 0; k < x.unnormalized.size(); ++k) {
      worst_closed = std::max(worst_closed, std::abs(x.unnormalized[k] - y.unnormalized[k]));
    }
  }
  v.require(worst <= 1e-9, "oracle agreement");
  v.require(worst_closed <= 1e-10, "two-mode closed form");
  v.note("max deviation " + fmt("%.1e", worst) + " (oracle), " + fmt("%.1e", worst_closed) + " (closed form)");
  return v;
}

Verdict d_reconstruction() {
  Verdict v;
  testing::Gen gen(1005);
  double worst = 0.0;
  int monotone_failures = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const int n = gen.integer(2, 5);
    const auto u = gen.unitary(n);
    const auto pattern = gen.pattern(n, n - 1);
    std::vector<int> active(n);
    for (int i = 0; i < n; ++i) active[i] = i;
    const auto d = d_coefficients(u, pattern, active);
    for (int k = 0; k < 5; ++k) {
      const double p = gen.uniform(0.01, 0.99);
      const auto r = condition_mixed(InputSpec::uniform_two_level(n, p), u, pattern);
      if (!r.defined()) continue;
      const auto c = reconstruct_from_d(d, p);
      for (std::size_t j = 0; j < c.size(); ++j) worst = std::max(worst, std::abs(c[j] - r.normalized[j]));
    }
    bool seen_false = false;
    for (int k = 0; k <= 400; ++k) {
      const bool holds = improvement_predicate(d, std::pow(10.0, -4.0 + 8.0 * k / 400.0));
      if (holds && seen_false) ++monotone_failures;
      seen_false = seen_false || !holds;
    }
  }
  v.require(worst <= 1e-9, "reconstruction");
  v.require(monotone_failures == 0, "predicate monotone in R_in");
  v.note("max deviation " + fmt("%.1e", worst));
  return v;
}

// ---------------------------------------------------------------------------

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> out;
  for (int k = 0; k < points; ++k) out.push_back(std::pow(10.0, lo + (hi - lo) * k / (points - 1)));
  return out;
}

bool non_monotone_with_interior_peak(const std::vector<double>& c1) {
  const auto peak = std::max_element(c1.begin(), c1.end());
  return peak != c1.begin() && peak != c1.end() - 1;
}

Verdict figure_three() {
  Verdict v;
  ScenarioConfig config;  // N = 4, p = 0.2, D = 2
  const auto eps = log_grid(-3.5, -0.2, 200);
  auto curve = [&](Scenario s, double p2 = 0.001) {
    ScenarioConfig c = config;
    c.two_photon_probability = p2;
    std::vector<double> out;
    for (double e : eps) out.push_back(run_scenario(s, c, e).probability(1));
    return out;
  };

  // ideal crossing of c1 = 0.2, located by bisection in epsilon
  const auto ideal = curve(Scenario::kIdeal);
  std::size_t k = 0;
  while (k + 1 < eps.size() && !(ideal[k] > 0.2 && ideal[k + 1] <= 0.2)) ++k;
  double crossing_probability = -1.0;
  if (k + 1 < eps.size()) {
    double lo = eps[k], hi = eps[k + 1];
    for (int it = 0; it < 100; ++it) {
      const double mid = std::sqrt(lo * hi);
      (run_scenario(Scenario::kIdeal, config, mid).probability(1) > 0.2 ? lo : hi) = mid;
    }
    crossing_probability = run_scenario(Scenario::kIdeal, config, lo).pattern_probability;
  }
  v.require(std::abs(crossing_probability - 0.007) <= 0.002, "ideal crossing near probability 0.007");

  // bucket shift and efficiency loss are measured over the weak-coupling
  // range where the ideal curve improves on the input
  const auto bucket = curve(Scenario::kBucket);
  double bucket_shift = 0.0;
  double tail_shift = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    double& worst = ideal[i] > 0.2 ? bucket_shift : tail_shift;
    worst = std::max(worst, std::abs(bucket[i] - ideal[i]));
  }
  v.require(bucket_shift < 1e-3, "bucket shift below 1e-3");

  const auto lossy = curve(Scenario::kBucketEfficiency);
  double lo_drop = 1.0, hi_drop = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (ideal[i] <= 0.2) continue;
    lo_drop = std::min(lo_drop, bucket[i] - lossy[i]);
    hi_drop = std::max(hi_drop, bucket[i] - lossy[i]);
  }
  v.require(lo_drop >= 0.001 && hi_drop <= 0.005, "efficiency reduction 0.003 +- 0.002");

  const auto dark = curve(Scenario::kDarkCounts);
  const auto two = curve(Scenario::kTwoPhotonInputs, 0.001);
  const auto two_heavy = curve(Scenario::kTwoPhotonInputs, 0.004);
  const double dark_max = *std::max_element(dark.begin(), dark.end());
  const double two_max = *std::max_element(two.begin(), two.end());
  const double heavy_max = *std::max_element(two_heavy.begin(), two_heavy.end());
  v.require(non_monotone_with_interior_peak(dark) && dark_max > 0.2, "dark-count curve peaks above 0.2");
  v.require(non_monotone_with_interior_peak(two) && two_max > 0.2, "two-photon curve peaks above 0.2");
  v.require(heavy_max <= 0.2, "P2 = 0.004 never exceeds 0.2");

  v.note("crossing at P = " + fmt("%.5f", crossing_probability) + ", bucket shift " + fmt("%.1e", bucket_shift) +
         " (" + fmt("%.1e", tail_shift) + " where c1 <= 0.2), efficiency drop " + fmt("%.5f", lo_drop) + ".." + fmt("%.5f", hi_drop) + ", max c1 dark " +
         fmt("%.5f", dark_max) + " two-photon " + fmt("%.5f", two_max) + " (P2=0.004: " +
         fmt("%.5f", heavy_max) + ")");
  return v;
}

Verdict purification() {
  Verdict v;
  testing::Gen gen(1007);
  double worst = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const int d = gen.integer(0, 4);
    std::vector<double> q(static_cast<std::size_t>(d) + 2, 0.0);
    for (int k = 0; k < d; ++k) q[k] = gen.uniform(0.0, 1.0);
    q[d + 1] = gen.uniform(0.05, 1.0);
    double sum = 0.0;
    for (double x : q) sum += x;
    for (double& x : q) x /= sum;
    const auto bs = beam_splitter(gen.uniform(0.05, kPi / 2 - 0.05), gen.uniform(0.0, 2 * kPi));
    const auto r = purify_super_poissonian(ModeDistribution::from_dense(q), bs);
    for (std::size_t n = 0; n < r.normalized.size(); ++n) {
      worst = std::max(worst, std::abs(r.normalized[n] - (n == 1 ? 1.0 : 0.0)));
    }
  }
  v.require(worst <= 1e-12, "output is |1>");
  v.note("max deviation " + fmt("%.1e", worst));
  return v;
}

// ---------------------------------------------------------------------------

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(LOPP_CLI_PATH) + " " + args + " 2>/dev/null";
  return std::system(cmd.c_str());
}

Verdict determinism() {
  Verdict v;
  const fs::path dir = fs::temp_directory_path() / "lopp_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  int compared = 0;
  for (const char* run : {"a", "b"}) {
    const fs::path out = dir / run;
    fs::create_directories(out);
    v.require(run_tool("exp-sweep --out " + out.string()) == 0, "exp-sweep ran");
    v.require(run_tool("chain-sweep --out " + (out / "chain_sweep.csv").string()) == 0, "chain-sweep ran");
    v.require(run_tool("pure-landscape --out " + (out / "pure_landscape.csv").string()) == 0, "pure-landscape ran");
  }
  for (const auto& entry : fs::directory_iterator(dir / "a")) {
    const auto other = dir / "b" / entry.path().filename();
    v.require(fs::exists(other) && slurp(entry.path()) == slurp(other), entry.path().filename().string());
    ++compared;
  }
  v.require(compared == 7, "seven CSV files");
  v.note(std::to_string(compared) + " CSV files identical");
  fs::remove_all(dir);
  return v;
}

Verdict bound_everywhere(const std::string& extra) {
  Verdict v;
  double worst = 0.0;
  long long violations = 0;
  for (int n : {3, 4, 5}) {
    const auto r = verify_nogo_patterns(n, 0.2, 1000, 3000 + n);
    worst = std::max(worst, r.max_ratio_over_r_in);
    violations += r.bound_violations;
  }
  v.require(worst <= 1.0 + 1e-9, "D = 0, D = M-1 and equal-input D = 1 trials keep R_out <= R_in");
  v.require(violations == 0, "restricted-class violations");
  const auto audit = testing::bound_audit_summary();
  v.require(audit.violations == 0, "audited results (first: " + audit.first_violation + ")");
  v.note("max R_out/R_in in restricted classes " + fmt("%.9f", worst) + ", audited " +
         std::to_string(audit.applicable) + " results" + extra);
  return v;
}

Verdict high_efficiency_search() {
  Verdict v;
  SearchTask task;
  task.n_modes = 4;
  task.p_max = 0.6;
  task.trials = 10000;
  task.seed = 606;
  const auto r = search_improvement(task);
  v.require(r.trials_run == 10000, "budget completed");
  v.require(r.bound_violations == 0, "no bound violation");
  if (r.improvement_found) {
    const auto again = evaluate_objective(task, r.best_interferometer, r.best_pattern);
    v.require(again && std::abs(*again - *r.best_value) <= 1e-10, "counterexample reproduces");
  }
  v.note("verdict: " + r.verdict() + ", best c1 " + fmt("%.9f", r.best_value.value_or(0.0)));
  return v;
}

}  // namespace

int main() {
  testing::install_bound_audit();
  struct Criterion {
    int order;
    std::string label;
    std::function<Verdict()> run;
    double time_limit_s;
  };
  const std::vector<Criterion> criteria{
      {1, "1 pure-scheme exactness", pure_scheme, 5.0},
      {2, "2 beam-splitter and three-mode no-go", beam_splitter_nogo, 120.0},
      {4, "4 chain-scheme asymptotics", chain_asymptotics_check, 60.0},
      {5, "5 oracle equivalence", oracle_equivalence, 1e9},
      {6, "6 d-coefficient reconstruction", d_reconstruction, 1e9},
      {7, "7 detector-imperfection sweep", figure_three, 300.0},
      {8, "8 purification", purification, 1e9},
      {9, "9 determinism", determinism, 1e9},
      {10, "p=0.6 search property", high_efficiency_search, 1e9},
      // run last so the audit covers everything above
      {3, "3 ratio bound", [] { return bound_everywhere(" across this run"); }, 1e9},
  };

  int failures = 0;
  std::vector<std::pair<int, std::string>> lines;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.time_limit_s) v.require(false, "runtime " + fmt("%.1f s", seconds));
    if (!v.pass) ++failures;
    char head[160];
    std::snprintf(head, sizeof head, "%s  criterion %s (%.2f s): ", v.pass ? "PASS" : "FAIL",
                  c.label.c_str(), seconds);
    lines.emplace_back(c.order, head + v.detail);
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& [order, line] : lines) std::printf("%s\n", line.c_str());
  return failures == 0 ? 0 : 1;
}
