#include <benchmark/benchmark.h>

#include <random>

#include "contractive/clark.hpp"
#include "contractive/fourier.hpp"
#include "contractive/hyperbolic_grid.hpp"
#include "contractive/measure_scans.hpp"

using namespace contractive;

namespace {

SelfMap blaschke_of_degree(int n) {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<Complex> zeros;
  for (int i = 0; i < n; ++i) zeros.push_back(std::polar(0.9 * std::sqrt(U(g)), kTwoPi * U(g)));
  return SelfMap::blaschke(zeros);
}

}  // namespace

// One ring of Poisson values of a depth-18 tree measure.
static void BM_RingPoisson(benchmark::State& state) {
  const RingEvaluator ring(bernoulli_alternating_measure(0.3, 18));
  const auto n = static_cast<std::size_t>(state.range(0));
  const double r = 1.0 - 1.0 / static_cast<double>(n);
  for (auto _ : state) benchmark::DoNotOptimize(ring.poisson(r, 0.5, n));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_RingPoisson)->RangeMultiplier(4)->Range(1 << 8, 1 << 16);

static void BM_ConditionB(benchmark::State& state) {
  const BoundaryMeasure sigma = bernoulli_alternating_measure(0.3, 18);
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(condition_b_constant(sigma, depth).constant);
}
BENCHMARK(BM_ConditionB)->DenseRange(8, 14, 3)->Unit(benchmark::kMillisecond);

static void BM_B2(benchmark::State& state) {
  const BoundaryMeasure sigma = bernoulli_alternating_measure(0.3, 12);
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(b2_characteristic(sigma, depth).value);
}
BENCHMARK(BM_B2)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_ClarkBlaschke(benchmark::State& state) {
  const SelfMap f = blaschke_of_degree(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(clark_blaschke(f, 0.3).total_mass());
}
BENCHMARK(BM_ClarkBlaschke)->RangeMultiplier(4)->Range(4, 64)->Unit(benchmark::kMicrosecond);

static void BM_SupHyperbolicDerivative(benchmark::State& state) {
  const SelfMap f = blaschke_of_degree(8);
  const HyperbolicGridSpec spec{static_cast<int>(state.range(0)), 0.25, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(sup_hyperbolic_derivative(f, spec).lower);
}
BENCHMARK(BM_SupHyperbolicDerivative)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
