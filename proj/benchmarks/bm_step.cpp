#include <benchmark/benchmark.h>

#include "pstwalk/pstwalk.hpp"

using namespace pstwalk;

static void BM_Step(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto params = WalkParams::make(m, m, Layout::OppositePart);
  Walker walker(params);
  for (auto _ : state) {
    walker.advance();
    benchmark::DoNotOptimize(walker.state().amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(params.dim()));
}
BENCHMARK(BM_Step)->RangeMultiplier(4)->Range(8, 512);

static void BM_FidelityCurve(benchmark::State& state) {
  const auto params = WalkParams::make(100, 100, Layout::OppositePart);
  for (auto _ : state) benchmark::DoNotOptimize(curve(params, 60, Source::FullSimulation));
}
BENCHMARK(BM_FidelityCurve)->Unit(benchmark::kMillisecond);

static void BM_DenseBuild(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto params = WalkParams::make(m, m, Layout::OppositePart);
  for (auto _ : state) benchmark::DoNotOptimize(build_dense(params));
}
BENCHMARK(BM_DenseBuild)->Arg(3)->Arg(6)->Unit(benchmark::kMicrosecond);

static void BM_ClosedForm(benchmark::State& state) {
  std::size_t t = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fidelity_closed_form(100, 50, t));
    t = t >= 999 ? 1 : t + 2;
  }
}
BENCHMARK(BM_ClosedForm);

static void BM_Sweep(benchmark::State& state) {
  const auto values = inclusive_range(2, 200);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_fmax(values, values));
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
