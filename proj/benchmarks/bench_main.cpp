#include <benchmark/benchmark.h>

#include "l2ext/bergman.hpp"
#include "l2ext/bounds.hpp"
#include "l2ext/integrate.hpp"

using namespace l2ext;

static void BM_McBallIntegral(benchmark::State& state) {
  const DomainSpec ball = DomainSpec::ball(1.0, 2);
  const auto f = [](const Point& p) { return 1.0 - norm_sq(p.coords()); };
  for (auto _ : state) benchmark::DoNotOptimize(mc_integrate(ball, f, state.range(0), 1).value);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_McBallIntegral)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_FubiniQuadrature(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fubini_sides(RadialProfile::log_singular(), k, 0.0).lhs.value);
}
BENCHMARK(BM_FubiniQuadrature)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

static void BM_GramAndSolve(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const DomainSpec ball = DomainSpec::ball(1.0, 3);
  const Weight w = Weight::radial(RadialProfile::log_singular(), 1);
  const VPolynomial f{{MultiIndex{1, 0}, Complex(1.0)}};
  for (auto _ : state) {
    const GramMatrix g = gram_matrix(ball, w, MultiIndexBasis(3, d, 1));
    benchmark::DoNotOptimize(min_norm_extension(f, g).squared_norm);
  }
}
BENCHMARK(BM_GramAndSolve)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_GramMonteCarlo(benchmark::State& state) {
  const DomainSpec ball = DomainSpec::ball(1.0, 2);
  GramOptions opts{GramMethod::MonteCarlo, 100'000, 3};
  for (auto _ : state)
    benchmark::DoNotOptimize(gram_matrix(ball, Weight::ball_standard(1.0), MultiIndexBasis(2, 3, 1), opts).entries());
}
BENCHMARK(BM_GramMonteCarlo)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
