#include <cmath>

#include <benchmark/benchmark.h>

#include "qfrac/cauchy.hpp"
#include "qfrac/operators.hpp"

using namespace qfrac;

namespace {

OperatorContext context(double q, double p) {
  return OperatorContext{QParams(q, p)};
}

void BM_QGamma(benchmark::State& state) {
  const double q = state.range(0) / 100.0;
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(q_gamma(t, q));
    t = t > 5.0 ? 0.1 : t + 0.37;
  }
}
BENCHMARK(BM_QGamma)->Arg(30)->Arg(50)->Arg(90)->Arg(99);

void BM_QPower(benchmark::State& state) {
  const QParams params(state.range(0) / 100.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(q_power(1.0, 0.3, 0.75, params));
}
BENCHMARK(BM_QPower)->Arg(30)->Arg(90);

void BM_FracIntegral(benchmark::State& state) {
  const auto ctx = context(state.range(0) / 100.0, 1.0);
  const FracOrder order(0.5);
  auto f = [](double x) { return 1.0 + x * x; };
  for (auto _ : state) benchmark::DoNotOptimize(frac_integral(f, 0.8, order, ctx));
}
BENCHMARK(BM_FracIntegral)->Arg(30)->Arg(50)->Arg(90);

void BM_CaputoDerivative(benchmark::State& state) {
  const auto ctx = context(state.range(0) / 100.0, 2.0);
  const FracOrder order(0.5);
  auto f = [](double x) { return 1.0 + x * x * x; };
  for (auto _ : state) benchmark::DoNotOptimize(caputo_derivative(f, 0.8, order, ctx));
}
BENCHMARK(BM_CaputoDerivative)->Arg(30)->Arg(90);

void BM_CaputoSimplified(benchmark::State& state) {
  const auto ctx = context(state.range(0) / 100.0, 2.0);
  const FracOrder order(0.5);
  auto f = [](double x) { return 1.0 + x * x * x; };
  for (auto _ : state) benchmark::DoNotOptimize(caputo_derivative_simplified(f, 0.8, order, ctx));
}
BENCHMARK(BM_CaputoSimplified)->Arg(30)->Arg(90);

void BM_SolveLinear(benchmark::State& state) {
  CauchyProblem pr;
  pr.rhs = [](double, double u) { return u; };
  pr.params = QParams(0.5, 1.0);
  pr.order = FracOrder(0.5);
  pr.lipschitz_A = 1.0;
  pr.radius_r = 10.0;
  SolveOptions opts;
  opts.max_iter = 200;
  const QLattice lattice{1.0, 0.5, static_cast<int>(state.range(0)), 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(solve(pr, lattice, opts).iterations_used);
}
BENCHMARK(BM_SolveLinear)->Arg(12)->Arg(48)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
