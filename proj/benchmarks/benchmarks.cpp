// Microbenchmarks for the hot paths: Gauss sums, sieving, index counting,
// the exact slice-maximization oracle, grid box counting, and the
// oscillatory quadrature kernel.
#include <benchmark/benchmark.h>

#include <schrodiv/evolution.hpp>
#include <schrodiv/exponents.hpp>
#include <schrodiv/numbertheory.hpp>
#include <schrodiv/optimizer.hpp>
#include <schrodiv/slabs.hpp>

using namespace schrodiv;

static void BM_GaussSum1d_q997(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gauss_sum_1d(3, 1, 997));
}
BENCHMARK(BM_GaussSum1d_q997);

static void BM_LinearSieve_100k(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(linear_sieve(100000));
}
BENCHMARK(BM_LinearSieve_100k);

static void BM_CountIndexSet_Q4096_N2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(count_index_set(4096, 2));
}
BENCHMARK(BM_CountIndexSet_Q4096_N2);

static void BM_SliceOracle_n6_m2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(exact_max_on_slice({6, 2}, rat(4), 32));
}
BENCHMARK(BM_SliceOracle_n6_m2);

static void BM_GrandMax_n15(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(s_of_alpha(15, rat(31, 4)));
}
BENCHMARK(BM_GrandMax_n15);

static void BM_BoxCount_n2_R1024(benchmark::State& state) {
  const SlabConfig cfg{{2, 1}, {rat(1, 2), rat(3, 4), rat(1, 4)}, 1024.0, SlabFamily::Talbot};
  for (auto _ : state) benchmark::DoNotOptimize(box_count(cfg, DeltaScale::InvR));
}
BENCHMARK(BM_BoxCount_n2_R1024);

static void BM_OscillatoryIntegral(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oscillatory_bump_integral(2.0, 0.3));
}
BENCHMARK(BM_OscillatoryIntegral);

BENCHMARK_MAIN();
