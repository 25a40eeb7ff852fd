#include <benchmark/benchmark.h>

#include "heegner/fastseries.hpp"

// compute_pi caches pi per precision, so time the uncached series sum.
static void BM_ChudnovskySum(benchmark::State& state) {
  const heegner::PrecisionContext ctx = heegner::make_context(state.range(0));
  const heegner::SeriesTermSpec spec = heegner::chudnovsky_spec();
  for (auto _ : state) benchmark::DoNotOptimize(heegner::sum_series(spec, ctx));
}
BENCHMARK(BM_ChudnovskySum)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond);

static void BM_CrossCheckPi(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(heegner::cross_check_pi(state.range(0)));
}
BENCHMARK(BM_CrossCheckPi)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMillisecond);

static void BM_BinarySplit(benchmark::State& state) {
  const heegner::SeriesTermSpec spec = heegner::chudnovsky_spec();
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(heegner::binary_split(spec, 0, state.range(0), threads));
}
BENCHMARK(BM_BinarySplit)->Args({1000, 1})->Args({1000, 4})->Args({10000, 1})->Args({10000, 4})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
