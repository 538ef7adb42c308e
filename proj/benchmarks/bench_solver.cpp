#include <benchmark/benchmark.h>

#include "maeigen/domain.hpp"
#include "maeigen/eigen_iteration.hpp"
#include "maeigen/ma_operator.hpp"

using namespace maeigen;

namespace {

void bm_dirichlet(benchmark::State& state, SolvePolicy policy) {
  const GridPtr g = discretize(ConvexDomain::disc({0, 0}, 1.0), 1.0 / state.range(0), 2);
  const std::vector<double> one(g->size(), 1.0);
  DirichletOptions opts;
  opts.policy = policy;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_dirichlet(g, one, {}, opts));
  }
  state.SetLabel(std::to_string(g->size()) + " nodes");
}

void bm_dirichlet_sweep(benchmark::State& state) { bm_dirichlet(state, SolvePolicy::Sweep); }
void bm_dirichlet_newton(benchmark::State& state) { bm_dirichlet(state, SolvePolicy::Newton); }

void bm_eigen_1d(benchmark::State& state) {
  const GridPtr g = discretize(ConvexDomain::interval(0, 1), 1.0 / state.range(0), 1);
  const MeasureSpec leb = MeasureSpec::lebesgue();
  for (auto _ : state) {
    benchmark::DoNotOptimize(inverse_iterate(g, leb));
  }
}

void bm_eigen_disc(benchmark::State& state) {
  const GridPtr g = discretize(ConvexDomain::disc({0, 0}, 1.0), 1.0 / state.range(0), 2);
  const MeasureSpec leb = MeasureSpec::lebesgue();
  for (auto _ : state) {
    benchmark::DoNotOptimize(inverse_iterate(g, leb));
  }
}

} // namespace

BENCHMARK(bm_dirichlet_sweep)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_dirichlet_newton)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_eigen_1d)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_eigen_disc)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
