// Copyright 2026 The onebit Authors
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

#include "onebit/lhv.hpp"
#include "onebit/qstate.hpp"

namespace onebit {
namespace {

void run_estimate(benchmark::State& state, const Protocol& p) {
  CounterRng rng = CounterRng::stream(5);
  const BlochVector a = random_unit_vector(rng), b = random_unit_vector(rng);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_behavior(p, a, b, n, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_EstimateMaxEntangled(benchmark::State& state) {
  run_estimate(state, Protocol::max_entangled());
}
BENCHMARK(BM_EstimateMaxEntangled)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_EstimateSemianalytical(benchmark::State& state) {
  run_estimate(state, Protocol::semianalytical(builtin_preset("5pi/32")));
}
BENCHMARK(BM_EstimateSemianalytical)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_HaarBasis(benchmark::State& state) {
  CounterRng rng = CounterRng::stream(6);
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(haar_random_basis(d, rng).vectors().data());
}
BENCHMARK(BM_HaarBasis)->Arg(3)->Arg(4);

}  // namespace
}  // namespace onebit
