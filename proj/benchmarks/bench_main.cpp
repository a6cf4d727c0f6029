#include <benchmark/benchmark.h>

#include <random>

#include "adsgeom/barrier.hpp"
#include "adsgeom/solver.hpp"

using namespace adsgeom;

static void BM_ConvexHull(benchmark::State& st) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  PointCloud3 c;
  for (int i = 0; i < st.range(0); ++i) c.emplace_back(u(rng), u(rng), u(rng));
  for (auto _ : st) benchmark::DoNotOptimize(convex_hull(c));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_ConvexHull)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

static void BM_BlackDomain(benchmark::State& st) {
  const BoundaryCurve c = synth_boundary_curve(TrigSpec{0, {0, 0.2}, {}}, 0.8, static_cast<int>(st.range(0)));
  const ProjPoint r(Vec4(1, 0.1, 0.2, -0.1));
  for (auto _ : st) benchmark::DoNotOptimize(black_domain_test(r, c));
}
BENCHMARK(BM_BlackDomain)->Arg(64)->Arg(512);

static void BM_HeightFieldMeanCurvature(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const ChartGrid g{n, n, 0.7};
  HeightField f(g, Side::Lower);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.active(i, j)) f.set(i, j, 0.2 * (g.x(i) * g.x(i) + g.y(j) * g.y(j)));
  for (auto _ : st) benchmark::DoNotOptimize(mean_curvature_field(f));
}
BENCHMARK(BM_HeightFieldMeanCurvature)->Arg(48)->Arg(96);

static void BM_SolverSweep(benchmark::State& st) {
  const TorusGraph g(LatticePair({2 * M_PI, 0}, {0, 2 * M_PI}), static_cast<int>(st.range(0)), 0.5);
  for (auto _ : st) benchmark::DoNotOptimize(graph_mean_curvature(g));
}
BENCHMARK(BM_SolverSweep)->Arg(32)->Arg(64);

static void BM_BarrierPipeline(benchmark::State& st) {
  const BoundaryCurve c = synth_boundary_curve(TrigSpec{0, {0, 0.2}, {}});
  BarrierParams p;
  p.nx = p.ny = 48;
  for (auto _ : st) benchmark::DoNotOptimize(build_barriers(c, p));
}
BENCHMARK(BM_BarrierPipeline)->Unit(benchmark::kMillisecond)->Iterations(2);
BENCHMARK_MAIN();
