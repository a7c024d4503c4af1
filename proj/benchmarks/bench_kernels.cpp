#include <benchmark/benchmark.h>

#include "speclab/grid.hpp"
#include "speclab/kernels.hpp"
#include "speclab/potential.hpp"
#include "speclab/spectrum.hpp"
#include "speclab/sublevel.hpp"

using namespace speclab;

static void BM_HeatMatrix(benchmark::State& state) {
  const Grid grid(2, static_cast<double>(state.range(0)), 0.25);
  for (auto _ : state) benchmark::DoNotOptimize(heat_matrix(grid, 1.0));
  state.counters["points"] = static_cast<double>(grid.size());
}
BENCHMARK(BM_HeatMatrix)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_SpectralNorm(benchmark::State& state) {
  const Grid grid(2, static_cast<double>(state.range(0)), 0.25);
  const auto c = compose_C(grid, 1.0, parse_potential("x1^2*x2^2", 2));
  const Eigen::MatrixXd op = c.operator_matrix();
  for (auto _ : state) benchmark::DoNotOptimize(spectral_norm(op));
}
BENCHMARK(BM_SpectralNorm)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_LowestEigenvalues(benchmark::State& state) {
  const Grid grid(2, static_cast<double>(state.range(0)), 0.1);
  const auto h = hamiltonian(grid, parse_potential("x1^2*x2^2", 2));
  EigenSolveOptions opts;
  opts.k = 5;
  for (auto _ : state) benchmark::DoNotOptimize(lowest_eigenvalues(h, opts));
  state.counters["points"] = static_cast<double>(grid.size());
}
BENCHMARK(BM_LowestEigenvalues)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_MonteCarloMeasure(benchmark::State& state) {
  const auto v = parse_potential("x1^2*x2^2", 2);
  const auto region = Region::ball({0.0, 0.0}, 20.0);
  const auto samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(measure(v, 1.0, region, MeasureMethod::MonteCarlo, samples, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloMeasure)->Arg(10'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
