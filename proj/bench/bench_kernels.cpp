#include <benchmark/benchmark.h>

#include "asmval/analytic.hpp"
#include "asmval/exact.hpp"

using namespace asmval;
using exact::Count;

static void BM_ValuationSweep(benchmark::State& state) {
  const Count n_max = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(exact::valuation_sweep(Prime(2), 1, n_max));
  state.SetItemsProcessed(state.iterations() * n_max);
}
BENCHMARK(BM_ValuationSweep)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_ValuationSweepSerial(benchmark::State& state) {
  const Count n_max = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(exact::valuation_sweep_serial(Prime(2), 1, n_max));
  state.SetItemsProcessed(state.iterations() * n_max);
}
BENCHMARK(BM_ValuationSweepSerial)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_CoefficientBuild(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(analytic::FourierCoefficientSet::build(Prime(7), order));
}
BENCHMARK(BM_CoefficientBuild)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond);

static void BM_CoefficientBuildSerial(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(analytic::FourierCoefficientSet::build_serial(Prime(7), order));
}
BENCHMARK(BM_CoefficientBuildSerial)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond);

static void BM_TheoremSweep(benchmark::State& state) {
  const auto coeffs = analytic::FourierCoefficientSet::build(Prime(7), 400);
  const Count n_max = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(analytic::theorem_rhs_sweep(1, n_max, coeffs));
  state.SetItemsProcessed(state.iterations() * n_max);
}
BENCHMARK(BM_TheoremSweep)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_TheoremSweepSerial(benchmark::State& state) {
  const auto coeffs = analytic::FourierCoefficientSet::build(Prime(7), 400);
  const Count n_max = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(analytic::theorem_rhs_sweep_serial(1, n_max, coeffs));
  state.SetItemsProcessed(state.iterations() * n_max);
}
BENCHMARK(BM_TheoremSweepSerial)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
