#include <benchmark/benchmark.h>

#include "liars/control_curve.hpp"
#include "liars/fokker_planck.hpp"
#include "liars/kinetic.hpp"
#include "liars/micro.hpp"

using namespace liars;

static void micro_classic_step(benchmark::State& st) {
  OpinionState s;
  s.x = uniform_opinions(static_cast<int>(st.range(0)) - 1, 1);
  const Kernel k = SelfDependent{};
  for (auto _ : st) {
    auto c = control_classic(s, k, 0.1, 1e-2);
    benchmark::DoNotOptimize(step_micro(s, c, k, 0.1));
  }
  st.SetComplexityN(st.range(0));
}
BENCHMARK(micro_classic_step)->RangeMultiplier(10)->Range(50, 5000)->Complexity();

static void micro_smoothed_consistent(benchmark::State& st) {
  OpinionState s;
  s.x = uniform_opinions(static_cast<int>(st.range(0)) - 1, 1);
  const Kernel k = SmoothedBounded{0.1, 0.2};
  for (auto _ : st) benchmark::DoNotOptimize(control_consistent(s, k, 0.1, 1e-2));
}
BENCHMARK(micro_smoothed_consistent)->Arg(50)->Arg(200);

static void mc_steps(benchmark::State& st) {
  McConfig cfg;
  cfg.samples = static_cast<int>(st.range(0));
  cfg.steps = 10;
  for (auto _ : st) benchmark::DoNotOptimize(mc_run(cfg));
}
BENCHMARK(mc_steps)->Arg(1000)->Arg(10000);

static void fv_single_step(benchmark::State& st) {
  FpConfig cfg;
  cfg.cells = static_cast<int>(st.range(0));
  cfg.kernel = st.range(1) ? Kernel{SmoothedBounded{0.1, 0.2}} : Kernel{Constant{1.0}};
  cfg.liars = {{0.1, 0.5, 1.0, 0.0}};
  const FvOperator op(cfg);
  auto g = initial_density(cfg);
  const double dt = op.stable_dt();
  for (auto _ : st) {
    g = fv_step(g, op, dt);
    benchmark::DoNotOptimize(g.u.data());
  }
}
BENCHMARK(fv_single_step)->Args({201, 0})->Args({501, 0})->Args({201, 1})->Args({501, 1});

static void control_curve_build(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(control_curve(SmoothedBounded{0.1, 0.2}, 0.15, 0.0, static_cast<int>(st.range(0))));
}
BENCHMARK(control_curve_build)->Arg(201)->Arg(501);

BENCHMARK_MAIN();
