#include "sincde/sincde.hpp"

#include <benchmark/benchmark.h>

using namespace sincde;

namespace {

void BM_SincGrid(benchmark::State& state) {
  const Sample s = draw_sample(CharModel::normal(1.0), state.range(0), 1);
  const SincEstimate est(s, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_on_grid(est, -4.0, 4.0, 512));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 512);
}
BENCHMARK(BM_SincGrid)->Arg(100)->Arg(1000);

void BM_SincDerivative(benchmark::State& state) {
  const Sample s = draw_sample(CharModel::normal(1.0), 200, 2);
  const int r = static_cast<int>(state.range(0));
  double x = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sinc_derivative_eval(s, 0.5, r, x));
    x = x > 3.0 ? -3.0 : x + 0.01;
  }
}
BENCHMARK(BM_SincDerivative)->Arg(0)->Arg(2)->Arg(6);

void BM_EcfGrid(benchmark::State& state) {
  const Sample s = draw_sample(CharModel::normal(1.0), state.range(0), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ecf_modulus_grid(s, default_ecf_t_max(s), default_ecf_step(s)));
  }
}
BENCHMARK(BM_EcfGrid)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_EcfRule(benchmark::State& state) {
  const Sample s = draw_sample(CharModel::normal(1.0), 2000, 4);
  for (auto _ : state) benchmark::DoNotOptimize(ecf_rule(s));
}
BENCHMARK(BM_EcfRule)->Unit(benchmark::kMillisecond);

void BM_SincMiseClosed(benchmark::State& state) {
  const CharModel m = CharModel::normal(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(sinc_mise(m, 1000, 0.38));
}
BENCHMARK(BM_SincMiseClosed);

void BM_SincMiseQuadrature(benchmark::State& state) {
  const CharModel m = CharModel::cauchy(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(sinc_mise(m, 1000, 0.29, 0, Path::quadrature));
}
BENCHMARK(BM_SincMiseQuadrature);

void BM_ConventionalQuadrature(benchmark::State& state) {
  const CharModel m = CharModel::uniform_power(3);
  for (auto _ : state) benchmark::DoNotOptimize(conventional_mise(KernelSpectrum::normal(), m, 1000, 0.3));
}
BENCHMARK(BM_ConventionalQuadrature);

void BM_MiseTableRow(benchmark::State& state) {
  const auto family = state.range(0) ? TableFamily::cauchy : TableFamily::normal;
  for (auto _ : state) benchmark::DoNotOptimize(mise_table_row(family, 1000));
}
BENCHMARK(BM_MiseTableRow)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
