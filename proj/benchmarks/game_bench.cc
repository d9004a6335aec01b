// Copyright 2026 The distval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <vector>

#include "distval/game.hpp"

namespace distval {
namespace {

std::vector<double> distances(std::size_t n) {
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = 0.1 * static_cast<double>(i + 1);
  return d;
}

void BM_BuildGame(benchmark::State& state) {
  const auto d = distances(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_game(d));
}
BENCHMARK(BM_BuildGame)->DenseRange(2, 7);

void BM_VerifyMinmax(benchmark::State& state) {
  const auto g = build_game(distances(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(verify_minmax(g));
}
BENCHMARK(BM_VerifyMinmax)->DenseRange(2, 5);

void BM_VerifyMinmaxSampled(benchmark::State& state) {
  const auto d = distances(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_minmax_sampled(d, 1000, 1));
}
BENCHMARK(BM_VerifyMinmaxSampled)->Arg(10)->Arg(40);

}  // namespace
}  // namespace distval
