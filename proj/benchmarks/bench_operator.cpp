#include <benchmark/benchmark.h>

#include "maeigen/domain.hpp"
#include "maeigen/functionals.hpp"
#include "maeigen/ma_operator.hpp"

using namespace maeigen;

namespace {

GridFunction disc_quadratic(double h, int width) {
  const GridPtr g = discretize(ConvexDomain::disc({0, 0}, 1.0), h, width);
  return GridFunction::sample(g, [](Vec2 p) { return 0.5 * (norm2(p) - 1.0); });
}

void bm_ma_apply(benchmark::State& state) {
  const GridFunction u = disc_quadratic(1.0 / state.range(0), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ma_apply(u));
  }
  state.SetItemsProcessed(state.iterations() * u.size());
}

void bm_ma_apply_width(benchmark::State& state) {
  const GridFunction u = disc_quadratic(1.0 / 64, int(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ma_apply(u));
  }
  state.SetItemsProcessed(state.iterations() * u.size());
}

void bm_energy(benchmark::State& state) {
  const GridFunction u = disc_quadratic(1.0 / state.range(0), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(energy(u));
  }
}

} // namespace

BENCHMARK(bm_ma_apply)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(bm_ma_apply_width)->Arg(1)->Arg(2)->Arg(3);
BENCHMARK(bm_energy)->Arg(32)->Arg(64);
