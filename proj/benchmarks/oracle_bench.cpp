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

#include <random>

#include <benchmark/benchmark.h>

#include "onebit/polytope.hpp"

namespace onebit {
namespace {

Functional gaussian_direction(const Scenario& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Functional f = Functional::zeros(s);
  for (double& v : f.table) v = g(rng);
  return f;
}

void BM_CommOracle(benchmark::State& state) {
  const Scenario s{static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                   static_cast<int>(state.range(2)), static_cast<int>(state.range(3))};
  const Functional f = gaussian_direction(s, 1);
  for (auto _ : state) benchmark::DoNotOptimize(comm_oracle(f).value);
}
BENCHMARK(BM_CommOracle)
    ->Args({2, 2, 2, 2})
    ->Args({3, 3, 3, 3})
    ->Args({4, 2, 4, 4})
    ->Unit(benchmark::kMicrosecond);

void BM_LocalOracle(benchmark::State& state) {
  const Scenario s{4, 2, 4, 4};
  const Functional f = gaussian_direction(s, 2);
  for (auto _ : state) benchmark::DoNotOptimize(local_oracle(f).value);
}
BENCHMARK(BM_LocalOracle)->Unit(benchmark::kMicrosecond);

void BM_EnumerateComm(benchmark::State& state) {
  const Scenario s{4, 2, 4, 4};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_comm_vertices(s).size());
}
BENCHMARK(BM_EnumerateComm)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace onebit
