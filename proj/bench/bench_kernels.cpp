// Serial baselines vs the parallel kernels on fixed workloads: exhaustive
// same-row enumeration, Monte Carlo moment sampling, and a cold recursion
// fill. Thread counts come from the machine; results are for comparing the
// two code paths, not absolute throughput.
#include <benchmark/benchmark.h>

#include "moments/mc_sampling.hpp"
#include "moments/moment_graphs.hpp"
#include "moments/recursion.hpp"

namespace {

void BM_same_row_serial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(moments::enumerate_same_row_serial(3));
  }
}
BENCHMARK(BM_same_row_serial)->Unit(benchmark::kMillisecond);

void BM_same_row_parallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(moments::enumerate_same_row(3));
  }
}
BENCHMARK(BM_same_row_parallel)->Unit(benchmark::kMillisecond);

void BM_mc_moment_serial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        moments::mc_moment_serial(2, 3, 4, 20000, 12345));
  }
}
BENCHMARK(BM_mc_moment_serial)->Unit(benchmark::kMillisecond);

void BM_mc_moment_parallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(moments::mc_moment(2, 3, 4, 20000, 12345));
  }
}
BENCHMARK(BM_mc_moment_parallel)->Unit(benchmark::kMillisecond);

void BM_recursion_serial(benchmark::State& state) {
  for (auto _ : state) {
    moments::MemoTable memo;
    benchmark::DoNotOptimize(
        moments::g(12, moments::EdgeVector{0, 0, 0}, memo));
  }
}
BENCHMARK(BM_recursion_serial)->Unit(benchmark::kMillisecond);

void BM_recursion_level_fill(benchmark::State& state) {
  for (auto _ : state) {
    moments::MemoTable memo;
    benchmark::DoNotOptimize(
        moments::g_parallel(12, moments::EdgeVector{0, 0, 0}, memo));
  }
}
BENCHMARK(BM_recursion_level_fill)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
