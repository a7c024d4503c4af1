#include <benchmark/benchmark.h>

#include "speclab/compound.hpp"
#include "speclab/inequalities.hpp"
#include "speclab/lanczos.hpp"
#include "speclab/linalg.hpp"

using namespace speclab;

static void BM_ExpmSym(benchmark::State& state) {
  Rng rng(1);
  const auto a = random_psd(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(expm_sym(a, 1.0));
}
BENCHMARK(BM_ExpmSym)->Arg(4)->Arg(8)->Arg(32)->Arg(128);

static void BM_SingularValues(benchmark::State& state) {
  Rng rng(2);
  const GeneralMatrix a(random_gaussian(state.range(0), state.range(0), rng));
  for (auto _ : state) benchmark::DoNotOptimize(singular_values(a));
}
BENCHMARK(BM_SingularValues)->Arg(8)->Arg(64)->Arg(256);

static void BM_CompoundMatrix(benchmark::State& state) {
  Rng rng(3);
  const GeneralMatrix a(random_gaussian(8, 8, rng));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compound_matrix(a, n));
}
BENCHMARK(BM_CompoundMatrix)->DenseRange(1, 4);

// 1-D Dirichlet Laplacian, lowest five
static void BM_Lanczos(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const LinearMap lap = [n](std::span<const double> x, std::span<double> y) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double v = 2.0 * x[i];
      if (i > 0) v -= x[i - 1];
      if (i + 1 < n) v -= x[i + 1];
      y[i] = v;
    }
  };
  LanczosOptions opts;
  opts.k = 5;
  opts.tolerance = 1e-6;
  opts.max_matvecs = 200'000;
  for (auto _ : state) benchmark::DoNotOptimize(lanczos_extremal(lap, n, opts));
}
BENCHMARK(BM_Lanczos)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_InequalityBatch(benchmark::State& state) {
  BatchOptions opts;
  opts.trials = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_inequality_batch(opts));
}
BENCHMARK(BM_InequalityBatch)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
