#include <benchmark/benchmark.h>

#include "bsl/bethe.hpp"
#include "bsl/sector.hpp"

namespace {

using namespace bsl;

void BM_SolveState(benchmark::State& state) {
  const double ratio = 1.0 / static_cast<double>(state.range(0));
  const ModelParams params = ModelParams::from_density_ratio(5, ratio);
  const auto m =
      QuantumNumbers::from_integers(std::vector<std::int64_t>{-7, -2, 0, 3, 8}, 10);
  SolverOptions opts;
  opts.tolerance = 1e-13;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_state(m, params, opts));
  }
}
BENCHMARK(BM_SolveState)->Arg(1)->Arg(10)->Arg(100);

void BM_Residual(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const ModelParams params(n, 2.5);
  std::vector<std::int64_t> values;
  for (int i = 0; i < n; ++i) values.push_back(2 * i - n);
  const auto m = QuantumNumbers::from_integers(values, 2 * n);
  const auto lambda = limit_rapidities(m, params, CouplingLimit::infinite_coupling);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bethe_residual(lambda, m, params));
  }
}
BENCHMARK(BM_Residual)->Arg(5)->Arg(9)->Arg(13);

void BM_BuildSector(benchmark::State& state) {
  const ModelParams params = ModelParams::from_density_ratio(5, 0.1);
  SolverOptions opts;
  opts.tolerance = 1e-13;
  BuildOptions build;
  build.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_sector(params, 2, 12, opts, build));
  }
}
BENCHMARK(BM_BuildSector)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
