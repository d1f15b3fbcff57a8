// Serial reference vs OpenMP kernels. Thread counts are benchmark arguments;
// the serial rows use the plain loops the tests compare against.

#include <benchmark/benchmark.h>

#include "qineq/asymptotics.hpp"
#include "qineq/indices.hpp"
#include "qineq/simulation.hpp"

using namespace qineq;

namespace {

SimulationConfig bench_config() {
  SimulationConfig c;
  c.name = "bench";
  c.dist = Distribution::dagum(1, 2, 1);
  c.sample_sizes = {100};
  c.replications = 200;
  c.master_seed = 1;
  return c;
}

void BM_SimulationSerial(benchmark::State& state) {
  const auto c = bench_config();
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(c, {Execution::serial, 0}));
}
BENCHMARK(BM_SimulationSerial)->Unit(benchmark::kMillisecond);

void BM_SimulationParallel(benchmark::State& state) {
  const auto c = bench_config();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(c, {Execution::parallel, threads}));
}
BENCHMARK(BM_SimulationParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SigmaZ(benchmark::State& state) {
  const auto d = Distribution::dagum(1, 2, 1);
  VarianceOptions opts;
  opts.exec = state.range(0) == 0 ? Execution::serial : Execution::parallel;
  for (auto _ : state) benchmark::DoNotOptimize(sigma2_Z(d, opts));
}
BENCHMARK(BM_SigmaZ)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_IndexClosedForm(benchmark::State& state) {
  const QuantileEstimate est(draw_sample(Distribution::dagum(1, 2, 1), state.range(0), 3),
                             QuantileScheme::HF);
  for (auto _ : state) benchmark::DoNotOptimize(index_estimate_closed_form(est, IndexKind::qZI));
}
BENCHMARK(BM_IndexClosedForm)->Arg(100)->Arg(10000);

void BM_IndexQuadrature(benchmark::State& state) {
  const QuantileEstimate est(draw_sample(Distribution::dagum(1, 2, 1), state.range(0), 3),
                             QuantileScheme::HF);
  for (auto _ : state) benchmark::DoNotOptimize(index_estimate_quadrature(est, IndexKind::qZI));
}
BENCHMARK(BM_IndexQuadrature)->Arg(100)->Arg(10000);

}  // namespace
BENCHMARK_MAIN();
