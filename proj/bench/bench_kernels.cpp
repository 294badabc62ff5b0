/* Copyright 2026 The tunnelprobe Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "tunnelprobe/kernels.hpp"
#include "tunnelprobe/tunnelgen.hpp"

namespace tp = tunnelprobe;
namespace k = tunnelprobe::kernels;

namespace {

k::RowMatrix random_rows(std::size_t n, std::size_t d) {
  std::mt19937_64 gen(n * 131 + d);
  std::normal_distribution<double> normal(0, 1);
  k::RowMatrix m(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : m.row(i)) v = normal(gen);
  }
  return m;
}

template <double (*Fn)(const k::RowMatrix&)>
void BM_PairwiseCosine(benchmark::State& state) {
  const auto m = random_rows(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(m));
  state.SetItemsProcessed(state.iterations() * state.range(0) * (state.range(0) - 1) / 2);
}

template <std::vector<double> (*Fn)(const k::RowMatrix&)>
void BM_ColumnMean(benchmark::State& state) {
  const auto m = random_rows(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(m));
  state.SetBytesProcessed(state.iterations() * state.range(0) * state.range(1) * sizeof(double));
}

template <void (*Fn)(std::span<const double>, std::span<double>)>
void BM_Logistic(benchmark::State& state) {
  const auto m = random_rows(1, state.range(0));
  std::vector<double> out(state.range(0));
  for (auto _ : state) {
    Fn(m.data(), out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GenerateGrid(benchmark::State& state) {
  const tp::TunnelSpec spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tp::tunnelgen::generate_grid(spec, {}, state.range(0), 42));
  }
  state.SetItemsProcessed(state.iterations() * 256 * state.range(0));
}

}  // namespace

BENCHMARK(BM_PairwiseCosine<k::serial::pairwise_cosine_sum>)
    ->Args({200, 64})->Args({1000, 256})->Args({2000, 4096})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairwiseCosine<k::parallel::pairwise_cosine_sum>)
    ->Args({200, 64})->Args({1000, 256})->Args({2000, 4096})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ColumnMean<k::serial::column_mean>)->Args({10000, 4096});
BENCHMARK(BM_ColumnMean<k::parallel::column_mean>)->Args({10000, 4096});
BENCHMARK(BM_Logistic<k::serial::logistic>)->Arg(12288)->Arg(1 << 20);
BENCHMARK(BM_Logistic<k::parallel::logistic>)->Arg(12288)->Arg(1 << 20);
BENCHMARK(BM_GenerateGrid)->Arg(1)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
