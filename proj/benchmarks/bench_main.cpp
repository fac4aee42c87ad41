#include <benchmark/benchmark.h>

#include <anisoperim/convex_curve.hpp>
#include <anisoperim/manufactured.hpp>
#include <anisoperim/radial.hpp>
#include <anisoperim/rearrange.hpp>

#include <cmath>

using namespace anisoperim;

namespace {

void BM_NormValue(benchmark::State& state) {
  const Norm n = Norm::pnorm(4);
  Vec2 xi(0.3, -1.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(n(xi));
    xi.x() += 1e-9;
  }
}
BENCHMARK(BM_NormValue);

void BM_NumericPolar(benchmark::State& state) {
  const PolarNorm p = PolarNorm::numeric(Norm::pnorm(4), static_cast<int>(state.range(0)));
  Vec2 v(0.7, 0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(p(v));
    v.y() += 1e-9;
  }
}
BENCHMARK(BM_NumericPolar)->Arg(180)->Arg(720);

void BM_MinkowskiSum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PolarNorm p = PolarNorm::analytic(Norm::ellipse(2, 1));
  const ConvexCurve a = wulff_curve(p, 1.0, n);
  const ConvexCurve b = wulff_curve(PolarNorm::analytic(Norm::euclidean()), 0.1, n);
  for (auto _ : state) benchmark::DoNotOptimize(minkowski_sum(a, b));
  state.SetComplexityN(n);
}
BENCHMARK(BM_MinkowskiSum)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oN);

void BM_ExtractLevelSet(benchmark::State& state) {
  const double h = 1.0 / static_cast<double>(state.range(0));
  const ScalarField f =
      linear_image_field(Norm::euclidean(), Mat2::Identity(), Vec2::Zero(), h, "disk");
  for (auto _ : state) benchmark::DoNotOptimize(extract_level_set(f, 0.4));
}
BENCHMARK(BM_ExtractLevelSet)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_HessianIntegral(benchmark::State& state) {
  const double h = 1.0 / static_cast<double>(state.range(0));
  const Norm n = Norm::ellipse(2, 1);
  const ScalarField f = wulff_power_field(PolarNorm::analytic(n), 1.0, Vec2::Zero(), 2.0, h);
  for (auto _ : state) benchmark::DoNotOptimize(hessian_integral(f, n));
}
BENCHMARK(BM_HessianIntegral)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_SolveRadial(benchmark::State& state) {
  const auto fstar = RadialProfile::from_table(RadialProfile::Kind::DecreasingRearrangement,
                                               {0.0, 1.0, 2.0}, {3.0, 1.5, 0.5});
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_radial(fstar, 2.0, 1.0, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SolveRadial)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
