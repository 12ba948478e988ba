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

#include <benchmark/benchmark.h>

#include "lopp/conditioner.hpp"
#include "lopp/detectors.hpp"
#include "lopp/schemes.hpp"

namespace {

void BM_ConditionChain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto chain = lopp::build_chain(n, 1e-3);
  const auto spec = lopp::InputSpec::uniform_two_level(n, 0.2);
  const auto pattern = chain.pattern_for((n + 1) / 2);
  for (auto _ : state) benchmark::DoNotOptimize(lopp::condition_mixed(spec, chain.interferometer, pattern));
}
BENCHMARK(BM_ConditionChain)->DenseRange(4, 10, 2);

void BM_ScenarioDarkCounts(benchmark::State& state) {
  const lopp::ScenarioConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lopp::run_scenario(lopp::Scenario::kDarkCounts, config, 0.05));
  }
}
BENCHMARK(BM_ScenarioDarkCounts);

}  // namespace
