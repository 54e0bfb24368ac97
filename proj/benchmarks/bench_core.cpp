#include <benchmark/benchmark.h>

#include <vector>

#include "nvodmr/lorentzian.hpp"
#include "nvodmr/seven_level.hpp"
#include "nvodmr/spectrum.hpp"

using namespace nvodmr;

static void BM_Spectrum500(benchmark::State& state) {
  const SweepGrid g{2.82e9, 2.92e9, 500};
  const FieldVector b(1e-4, 2e-4, 3e-4);
  NoiseConfig n = state.range(0) ? NoiseConfig{} : NoiseConfig::disabled();
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_spectrum(b, ApparatusConfig{}, n, g));
  }
  state.SetItemsProcessed(state.iterations() * 8 * 500);
}
BENCHMARK(BM_Spectrum500)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_SteadyState(benchmark::State& state) {
  const RateMatrix k = mixed_rates(alpha_matrix(1e-3, 5e-4), ZeroFieldRates{}, 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(steady_state(k, 1e5, 2e4));
  }
}
BENCHMARK(BM_SteadyState);

static void BM_LorentzianFit(benchmark::State& state) {
  std::vector<double> x;
  std::vector<double> y;
  for (int i = 0; i < 101; ++i) {
    x.push_back(2.86e9 + 2e5 * i);
    y.push_back(lorentzian_eval(x.back(), 0.02, 2.87e9, 1.5e6));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(lorentzian_fit(x, y, {0.018, 2.8703e9, 1.8e6}));
  }
}
BENCHMARK(BM_LorentzianFit);
BENCHMARK_MAIN();
