#include <benchmark/benchmark.h>

#include <array>

#include "permrow/permrow.hpp"

namespace {

permrow::ObservationMatrix s1_observation(std::size_t n, std::size_t p, std::uint64_t seed) {
  permrow::RandomStream rng(seed);
  const auto draw = permrow::generate_s1(n, p, 3.0, rng);
  return permrow::synthesize_observation(draw.truth.theta, 1.0, rng.permutation(p), rng);
}

void BM_LeadingTriple(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto y = s1_observation(n, 1000, 1);
  const auto centered = permrow::center_rows(y);
  permrow::SvdOptions opts;
  opts.checkMultiplicity = false;
  for (auto _ : state) benchmark::DoNotOptimize(permrow::leading_singular_triple(centered, opts));
}
BENCHMARK(BM_LeadingTriple)->Arg(50)->Arg(100)->Arg(150)->Unit(benchmark::kMillisecond);

void BM_SpectralEstimate(benchmark::State& state) {
  const auto y = s1_observation(static_cast<std::size_t>(state.range(0)), 1000, 2);
  for (auto _ : state) benchmark::DoNotOptimize(permrow::spectral_extremes(y));
}
BENCHMARK(BM_SpectralEstimate)->Arg(50)->Arg(150)->Unit(benchmark::kMillisecond);

void BM_IRep(benchmark::State& state) {
  const auto y = s1_observation(100, static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(permrow::irep_range(y));
}
BENCHMARK(BM_IRep)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_MonteCarloReplicates(benchmark::State& state) {
  permrow::ScenarioSpec spec;
  spec.n = 50;
  spec.p = 1000;
  spec.seed = 4;
  constexpr std::array methods = {permrow::Method::Spectral, permrow::Method::DirectSorting,
                                  permrow::Method::OrderStatistic};
  for (auto _ : state) benchmark::DoNotOptimize(permrow::run_monte_carlo(spec, methods, 4));
}
BENCHMARK(BM_MonteCarloReplicates)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
