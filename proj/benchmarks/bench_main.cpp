// Copyright 2026 The Authors.
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

#include "subsup/harness/commands.hpp"
#include "subsup/harness/synth.hpp"
#include "subsup/infomodel.hpp"
#include "subsup/random.hpp"
#include "subsup/sfm.hpp"
#include "subsup/ssp.hpp"
#include "subsup/structlearn.hpp"

namespace {

using namespace subsup;

SetFunction random_cut(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> w(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) w[i][j] = w[j][i] = rng.uniform01();
  return cut_function(w);
}

ClassModel synthetic(int n) {
  harness::SynthSpec spec;
  spec.n = n;
  return harness::make_synthetic_model(spec);
}

void BM_Queyranne(benchmark::State& state) {
  const SetFunction f = random_cut(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(queyranne_minimize(f).value);
}
BENCHMARK(BM_Queyranne)->DenseRange(8, 32, 8);

void BM_MinNormCut(benchmark::State& state) {
  const SetFunction f = random_cut(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(min_norm_minimize(f).value);
}
BENCHMARK(BM_MinNormCut)->DenseRange(8, 32, 8);

void BM_MinNormEntropyMinusModular(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SetFunction h = entropy_oracle(synthetic(n), EntropyKind::kMixture);
  const SetFunction f = h - modular_function(std::vector<double>(static_cast<std::size_t>(n), 1.4));
  for (auto _ : state) benchmark::DoNotOptimize(min_norm_minimize(f).value);
}
BENCHMARK(BM_MinNormEntropyMinusModular)->DenseRange(6, 18, 4);

void BM_BruteForce(benchmark::State& state) {
  const SetFunction f = random_cut(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_minimize(f, MinimizeMode::kAll).value);
}
BENCHMARK(BM_BruteForce)->DenseRange(8, 16, 4);

void BM_SspPartition(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ClassModel model = synthetic(n);
  const SetFunction f = pivot_partition_oracle(model, 0, true);
  const SetFunction g = pivot_partition_oracle(model, 0, false);
  SspOptions options;
  options.restarts = 3;
  for (auto _ : state) benchmark::DoNotOptimize(ssp_minimize(f, g, options).best.value);
}
BENCHMARK(BM_SspPartition)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

void BM_DiscriminativeTree(benchmark::State& state) {
  const ClassModel model = synthetic(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(make_discriminative_tree(model).edges().size());
}
BENCHMARK(BM_DiscriminativeTree)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

void BM_Table3Cell(benchmark::State& state) {
  const harness::Table3Options options;
  for (auto _ : state) benchmark::DoNotOptimize(harness::table3_cell(static_cast<int>(state.range(0)), 0, options).n);
}
BENCHMARK(BM_Table3Cell)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
