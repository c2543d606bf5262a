#include <benchmark/benchmark.h>

#include "cliquet/cliquet_pricing.hpp"
#include "cliquet/greeks.hpp"
#include "cliquet/mc_oracle.hpp"

namespace {

using namespace cliquet;

ModelParams model(const benchmark::State& state) {
  return risk_neutral_drift(0.03, state.range(0) / 100.0, state.range(1) / 10.0,
                            JumpSpec::normal(-0.1, 0.15));
}

ContractTerms contract() {
  return ContractTerms::equidistant(1000.0, 13.0 / 12.0, 0.0, 0.01, 12, 1.0 / 12.0);
}

void SigmaLambdaArgs(benchmark::internal::Benchmark* b) {
  for (int s : {10, 20, 40})
    for (int l : {0, 5, 20}) b->Args({s, l});
  b->Unit(benchmark::kMillisecond);
}

void BM_PriceFourier(benchmark::State& state) {
  const auto m = model(state);
  const auto t = contract();
  for (auto _ : state) benchmark::DoNotOptimize(price_fourier(t, m, SeriesPolicy{}));
}
BENCHMARK(BM_PriceFourier)->Apply(SigmaLambdaArgs);

void BM_PriceDistribution(benchmark::State& state) {
  const auto m = model(state);
  const auto t = contract();
  for (auto _ : state) benchmark::DoNotOptimize(price_distribution(t, m, SeriesPolicy{}));
}
BENCHMARK(BM_PriceDistribution)->Apply(SigmaLambdaArgs);

void BM_VegaFourier(benchmark::State& state) {
  const auto m = model(state);
  const auto t = contract();
  for (auto _ : state) benchmark::DoNotOptimize(vega_fourier(t, m, SeriesPolicy{}));
}
BENCHMARK(BM_VegaFourier)->Args({20, 5})->Unit(benchmark::kMillisecond);

void BM_VegaDistribution(benchmark::State& state) {
  const auto m = model(state);
  const auto t = contract();
  for (auto _ : state) benchmark::DoNotOptimize(vega_distribution(t, m, SeriesPolicy{}));
}
BENCHMARK(BM_VegaDistribution)->Args({20, 5})->Unit(benchmark::kMillisecond);

void BM_EzClosed(benchmark::State& state) {
  const auto m = model(state);
  const auto t = contract();
  for (auto _ : state) benchmark::DoNotOptimize(ez_closed(t, m, SeriesPolicy{}));
}
BENCHMARK(BM_EzClosed)->Args({20, 5});

void BM_Density(benchmark::State& state) {
  const auto m = model(state);
  for (auto _ : state) benchmark::DoNotOptimize(density(-0.02, 1.0 / 12.0, m));
}
BENCHMARK(BM_Density)->Args({20, 5});

void BM_McPrice(benchmark::State& state) {
  const ModelParams m = risk_neutral_drift(0.03, 0.2, 0.5, JumpSpec::normal(-0.1, 0.15));
  const auto t = contract();
  McConfig mc;
  mc.n_paths = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mc_price(t, m, mc));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_McPrice)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
