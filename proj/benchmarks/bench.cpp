#include <benchmark/benchmark.h>

#include "reso/rootfind.hpp"

using namespace reso;

namespace {

PotentialProfile reference_profile() {
  return PotentialProfile{default_fixed_params(), ControlPoint{2.0, 1.04}};
}

void BM_JostValue(benchmark::State& state) {
  PotentialProfile p = reference_profile();
  Cplx k(2.21, -0.14);
  for (auto _ : state) benchmark::DoNotOptimize(jost_function(p, k));
}
BENCHMARK(BM_JostValue);

void BM_JostThirdDerivatives(benchmark::State& state) {
  PotentialProfile p = reference_profile();
  Cplx k(2.21, -0.14);
  for (auto _ : state) benchmark::DoNotOptimize(jost_k_derivatives(p, k, 3));
}
BENCHMARK(BM_JostThirdDerivatives);

void BM_ParamDerivatives(benchmark::State& state) {
  PotentialProfile p = reference_profile();
  Cplx k(2.21, -0.14);
  for (auto _ : state) benchmark::DoNotOptimize(jost_param_derivatives(p, k));
}
BENCHMARK(BM_ParamDerivatives);

void BM_PolishZero(benchmark::State& state) {
  PotentialProfile p = reference_profile();
  for (auto _ : state) benchmark::DoNotOptimize(polish_zero(p, Cplx(2.21, -0.14)));
}
BENCHMARK(BM_PolishZero);

void BM_ScanWindow(benchmark::State& state) {
  PotentialProfile p = reference_profile();
  KWindow w{2.0, 2.4, -0.3, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(scan_window(p, w, 32));
}
BENCHMARK(BM_ScanWindow);

}  // namespace

BENCHMARK_MAIN();
