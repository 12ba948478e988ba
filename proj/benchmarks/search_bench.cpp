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

#include "lopp/search.hpp"

namespace {

void BM_SearchTrials(benchmark::State& state) {
  lopp::SearchTask task;
  task.n_modes = static_cast<int>(state.range(0));
  task.trials = 100;
  task.refine_top = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lopp::search_improvement(task));
  state.SetItemsProcessed(state.iterations() * task.trials);
}
BENCHMARK(BM_SearchTrials)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_SearchRefinement(benchmark::State& state) {
  lopp::SearchTask task;
  task.trials = 1;
  task.refine_top = 1;
  task.refine_evaluations = 400;
  for (auto _ : state) benchmark::DoNotOptimize(lopp::search_improvement(task));
}
BENCHMARK(BM_SearchRefinement)->Unit(benchmark::kMillisecond);

}  // namespace
