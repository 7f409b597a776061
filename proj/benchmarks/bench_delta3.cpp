#include <benchmark/benchmark.h>

#include "bsl/delta3.hpp"
#include "bsl/stats.hpp"
#include "bsl/unfold.hpp"

namespace {

using namespace bsl;

UnfoldedSequence poisson_sequence(std::size_t n) {
  UnfoldedSequence u;
  u.values = synthetic_poisson_levels(n, 7);
  u.source_end = n;
  return u;
}

void BM_Delta3ClosedForm(benchmark::State& state) {
  const auto u = poisson_sequence(100000);
  const double w = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(delta3_closed_form(u, u.values[10], w));
  }
}
BENCHMARK(BM_Delta3ClosedForm)->Arg(10)->Arg(100)->Arg(1000);

void BM_Delta3Curve(benchmark::State& state) {
  const auto u = poisson_sequence(50000);
  std::vector<double> grid;
  for (int i = 1; i <= 20; ++i) grid.push_back(static_cast<double>(i));
  const auto starts = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(delta3_curve(u, grid, starts));
  }
}
BENCHMARK(BM_Delta3Curve)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Unfold(benchmark::State& state) {
  const auto levels = synthetic_poisson_levels(
      static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(unfold(levels, 2));
  }
}
BENCHMARK(BM_Unfold)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
