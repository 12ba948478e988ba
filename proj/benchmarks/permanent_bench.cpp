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

#include <vector>

#include <benchmark/benchmark.h>

#include "lopp/interferometer.hpp"
#include "lopp/permanent.hpp"

namespace {

void BM_Permanent(benchmark::State& state) {
  const auto u = lopp::haar_random(static_cast<int>(state.range(0)), 7).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(lopp::permanent(u));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Permanent)->DenseRange(4, 20, 4);

void BM_PermanentThreaded(benchmark::State& state) {
  const auto u = lopp::haar_random(20, 7).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(lopp::permanent(u, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_PermanentThreaded)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

void BM_PermanentWithMultiplicity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto u = lopp::haar_random(n, 11).matrix();
  std::vector<int> rows(n, 0), cols(n, 0);
  rows[0] = n / 2;
  rows[1] = n - n / 2;
  for (int i = 0; i < n; ++i) cols[i] = 1;
  const lopp::PhotonConfig out(rows), in(cols);
  for (auto _ : state) benchmark::DoNotOptimize(lopp::permanent_with_multiplicity(u, out, in));
}
BENCHMARK(BM_PermanentWithMultiplicity)->DenseRange(4, 12, 4);

}  // namespace
