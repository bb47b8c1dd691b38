#include <benchmark/benchmark.h>

#include "hiproof/optimizers.hpp"
#include "hiproof/oracle.hpp"

namespace {

const double kAlpha = hiproof::deg_to_rad(30);

void BM_FixedVolume(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(hiproof::optimize_fixed_volume(400, kAlpha));
  }
}
BENCHMARK(BM_FixedVolume);

void BM_HeightRange(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(hiproof::optimize_height_range(400, kAlpha, 6, 7));
  }
}
BENCHMARK(BM_HeightRange);

void BM_ContourGrid(benchmark::State& state) {
  hiproof::oracle::GridSpec spec;
  spec.n_r = spec.n_k = static_cast<std::size_t>(state.range(0));
  const auto threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hiproof::oracle::contour_grid(400, kAlpha, spec, threads));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_ContourGrid)->Args({201, 1})->Args({201, 0})->Args({501, 1})->Args({501, 0});

void BM_GridMinGamma(benchmark::State& state) {
  hiproof::oracle::GridSpec spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hiproof::oracle::grid_min_gamma(kAlpha, spec));
  }
}
BENCHMARK(BM_GridMinGamma);

void BM_CompareWithOracle(benchmark::State& state) {
  const hiproof::ScenarioSpec spec = hiproof::HeightRange{400, kAlpha, 3, 4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(hiproof::oracle::compare_with_oracle(spec, 201));
  }
}
BENCHMARK(BM_CompareWithOracle);

}  // namespace
BENCHMARK_MAIN();
