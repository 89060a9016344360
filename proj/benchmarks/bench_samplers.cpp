#include <benchmark/benchmark.h>

#include "ldproj/mc.hpp"
#include "ldproj/sampling.hpp"

using namespace ldproj;

static void BM_ReprGaussian(benchmark::State& state) {
  const ProjectionConfig cfg{state.range(0), state.range(0) / 10, 2.0, WLaw::exponential()};
  RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(project_norm_repr(cfg, rng));
}
BENCHMARK(BM_ReprGaussian)->Arg(1000)->Arg(100000);

static void BM_ReprP3(benchmark::State& state) {
  const ProjectionConfig cfg{state.range(0), state.range(0) / 10, 3.0, WLaw::exponential()};
  RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(project_norm_repr(cfg, rng));
}
BENCHMARK(BM_ReprP3)->Arg(100)->Arg(1000);

static void BM_Direct(benchmark::State& state) {
  const ProjectionConfig cfg{state.range(0), 7, 3.0, WLaw::exponential()};
  RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(project_norm_direct(cfg, rng));
}
BENCHMARK(BM_Direct)->Arg(20)->Arg(200);

static void BM_TiltedEstimate(benchmark::State& state) {
  TailQuery q;
  q.cfg = {1000, 100, 2.0, WLaw::exponential()};
  q.threshold = 1.3;
  q.speed = 100.0;
  q.budget = 100000;
  q.tilt = suggest_chi_tilts(1000, 100, 2.0, 1.3);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_tail(q, 1).p_hat);
}
BENCHMARK(BM_TiltedEstimate)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
