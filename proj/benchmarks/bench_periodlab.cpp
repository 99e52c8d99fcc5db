#include <benchmark/benchmark.h>

#include "periodlab/currents.hpp"
#include "periodlab/mahler.hpp"
#include "periodlab/special_functions.hpp"

using namespace periodlab;

static void BM_MahlerP8(benchmark::State& state) {
  const auto p = LaurentPolynomial::p_alpha(8.0);
  QuadratureOptions q;
  q.budget = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mahler_measure(p, q));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MahlerP8)->Arg(1 << 14)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

static void BM_PairTheta(benchmark::State& state) {
  const auto t = build_fundamental_triple(static_cast<int>(state.range(0)));
  const auto suite = make_projective_suite(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 1, 0);
  PairOptions o;
  o.quadrature.budget = 1 << 14;
  for (auto _ : state) benchmark::DoNotOptimize(pair(t.theta, suite[0], o));
}
BENCHMARK(BM_PairTheta)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_PsiMap(benchmark::State& state) {
  const auto p = LaurentPolynomial::p_alpha(8.0);
  const std::vector<cplx> z{0.1, 0.2, 0.3, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(psi_map(p, z));
}
BENCHMARK(BM_PsiMap);

static void BM_Pfq(benchmark::State& state) {
  const HypergeometricSpec s{{1.5, 1.5, 1.0, 1.0}, {2.0, 2.0, 2.0}, cplx(0.25)};
  for (auto _ : state) benchmark::DoNotOptimize(pfq(s));
}
BENCHMARK(BM_Pfq);

static void BM_PointCount(benchmark::State& state) {
  const auto E = EllipticCurve::e24();
  for (auto _ : state) benchmark::DoNotOptimize(E.count_points(state.range(0)));
}
BENCHMARK(BM_PointCount)->Arg(997)->Arg(9973);
BENCHMARK_MAIN();
