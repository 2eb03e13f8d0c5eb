// Per-step cost of the three conserving methods and serial vs OpenMP
// throughput of the order-study sweep.

#include <benchmark/benchmark.h>

#include "dgm/experiments.hpp"
#include "dgm/integrators.hpp"

namespace {

const dgm::OdeProblem& problem() {
  static const dgm::OdeProblem p = dgm::rigid_body_modified(2, 1, 2.0 / 3.0, 1);
  return p;
}

void step_bench(benchmark::State& state, dgm::MethodKind kind) {
  dgm::Stepper st;
  st.kind = kind;
  const dgm::Vector x0 = dgm::rigid_body_initial_state();
  const double h = 0.1;
  for (auto _ : state) {
    auto out = st.step(problem(), x0, h);
    benchmark::DoNotOptimize(out.x_new.data());
  }
}

void BM_StepDgLinear(benchmark::State& s) { step_bench(s, dgm::MethodKind::DgLinear); }
void BM_StepDgFixedPoint(benchmark::State& s) { step_bench(s, dgm::MethodKind::DgFixedPoint); }
void BM_StepProjection(benchmark::State& s) { step_bench(s, dgm::MethodKind::Projection); }
void BM_StepRk4(benchmark::State& s) { step_bench(s, dgm::MethodKind::Rk); }

void sweep_bench(benchmark::State& state, dgm::Execution exec) {
  dgm::ExperimentConfig cfg;
  cfg.t_sample = 20.0;
  cfg.t_end = 20.0;
  cfg.h_grid = {{0.1, 1}, {0.05, 1}, {0.025, 1}, {0.0125, 1}};
  cfg.execution = exec;
  for (auto _ : state) {
    auto s = dgm::efficiency_study(cfg);
    benchmark::DoNotOptimize(s.methods.data());
  }
  state.counters["threads"] = exec == dgm::Execution::Parallel ? dgm::sweep_threads() : 1;
}

void BM_SweepSerial(benchmark::State& s) { sweep_bench(s, dgm::Execution::Serial); }
void BM_SweepParallel(benchmark::State& s) { sweep_bench(s, dgm::Execution::Parallel); }

}  // namespace

BENCHMARK(BM_StepDgLinear);
BENCHMARK(BM_StepDgFixedPoint);
BENCHMARK(BM_StepProjection);
BENCHMARK(BM_StepRk4);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
