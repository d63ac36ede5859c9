#include <benchmark/benchmark.h>

#include <numbers>

#include "balayage/numerics.hpp"
#include "balayage/operators.hpp"
#include "balayage/seminorms.hpp"

namespace {

using namespace balayage;

const QuadratureRule& rule() {
  static const QuadratureRule r = build_disk_rule(16, 128, 10);
  return r;
}

Measure sample_measure(int kind) {
  switch (kind) {
    case 0: return Measure::dirac(DiskPoint(0.6, 0.3));
    case 1: return Measure::weighted_area(0.0);
    default: return Measure::radial_segment(0.0);
  }
}

void bm_balayage_grid(benchmark::State& state) {
  const Measure mu = sample_measure(static_cast<int>(state.range(1)));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(balayage::balayage(mu, n, rule(), GridSampling::cell_average));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bm_balayage_grid)->Args({1024, 0})->Args({4096, 0})->Args({1024, 1})->Args({1024, 2})->Unit(benchmark::kMillisecond);

void bm_b_balayage_point(benchmark::State& state) {
  const Measure mu = sample_measure(static_cast<int>(state.range(0)));
  const DiskPoint z(0.7, -0.2);
  for (auto _ : state) benchmark::DoNotOptimize(b_balayage(mu, z, rule()));
}
BENCHMARK(bm_b_balayage_point)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void bm_oscillation_functional(benchmark::State& state) {
  const BoundaryGrid phi = balayage::balayage(Measure::radial_segment(0.0), 4096, rule(), GridSampling::cell_average);
  const Arc arc(1.0, std::numbers::pi / static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(thm1_functional(phi, arc, 0.5, 1.0));
}
BENCHMARK(bm_oscillation_functional)->RangeMultiplier(4)->Range(4, 64)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
