// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "merge_lab/adversary.hpp"
#include "merge_lab/harness.hpp"

using namespace merge_lab;

namespace {

void BM_TablesNaive(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_tables_naive(size, size));
}
BENCHMARK(BM_TablesNaive)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_TablesSerial(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_tables(size, size, {1}));
}
BENCHMARK(BM_TablesSerial)->Arg(8)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_TablesParallel(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_tables(size, size));
  state.counters["threads"] = omp_get_max_threads();
}
BENCHMARK(BM_TablesParallel)->Arg(8)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_MeasureSerial(benchmark::State& state) {
  MergeAlgorithm alg = hwang_lin();
  for (auto _ : state) benchmark::DoNotOptimize(measure_serial(alg, 6, 16));
}
BENCHMARK(BM_MeasureSerial)->Unit(benchmark::kMillisecond);

void BM_MeasureParallel(benchmark::State& state) {
  MergeAlgorithm alg = hwang_lin();
  for (auto _ : state) benchmark::DoNotOptimize(measure(alg, 6, 16));
  state.counters["threads"] = omp_get_max_threads();
}
BENCHMARK(BM_MeasureParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
