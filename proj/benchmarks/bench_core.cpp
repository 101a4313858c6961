#include "nilgo/families.hpp"
#include "nilgo/geodesics.hpp"
#include "nilgo/invariants.hpp"
#include "nilgo/sampling.hpp"

#include <benchmark/benchmark.h>

using namespace nilgo;

static void BM_SkewDerivations(benchmark::State& state)
{
  const MetricLieAlgebra l = family_thm2({2, 3});
  for (auto _ : state) { benchmark::DoNotOptimize(skew_derivations(l)); }
}
BENCHMARK(BM_SkewDerivations)->Unit(benchmark::kMillisecond);

static void BM_SkewDerivationsExact(benchmark::State& state)
{
  const MetricLieAlgebra l = n10(2);
  for (auto _ : state) { benchmark::DoNotOptimize(skew_derivations_exact(l)); }
}
BENCHMARK(BM_SkewDerivationsExact)->Unit(benchmark::kMillisecond);

static void BM_GordonN10(benchmark::State& state)
{
  const MetricLieAlgebra l = n10(2);
  SamplerConfig cfg;
  cfg.samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) { benchmark::DoNotOptimize(gordon_go_check(l, cfg)); }
}
BENCHMARK(BM_GordonN10)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_PfaffianNumeric(benchmark::State& state)
{
  const auto n = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(1);
  Matrix a = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) { a.col(i) = random_unit(rng, n); }
  const Matrix s = a - a.transpose();
  for (auto _ : state) { benchmark::DoNotOptimize(pfaffian_numeric(s)); }
}
BENCHMARK(BM_PfaffianNumeric)->Arg(8)->Arg(32)->Arg(128);

static void BM_PfaffianForm(benchmark::State& state)
{
  const TwoStepSplit s = split_two_step(family_thm2({Rational(3, 2), 2, 3}));
  for (auto _ : state) { benchmark::DoNotOptimize(pfaffian_form(s)); }
}
BENCHMARK(BM_PfaffianForm)->Unit(benchmark::kMillisecond);

static void BM_GeodesicRk4(benchmark::State& state)
{
  const MetricLieAlgebra l = n10(2);
  const Vector x0 = seeded_unit(0, 0, 10);
  for (auto _ : state) { benchmark::DoNotOptimize(geodesic_integrate(l, x0, 1.0, 1e-3)); }
}
BENCHMARK(BM_GeodesicRk4)->Unit(benchmark::kMillisecond);

static void BM_Distinguish(benchmark::State& state)
{
  const auto a = pfaffian_form(split_two_step(family_thm2({2, 3})));
  const auto b = pfaffian_form(split_two_step(family_thm2({Rational(5, 2), 3})));
  for (auto _ : state) { benchmark::DoNotOptimize(distinguish(a, b)); }
}
BENCHMARK(BM_Distinguish);
BENCHMARK_MAIN();
