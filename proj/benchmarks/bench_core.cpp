#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "barypoly/analysis.hpp"
#include "barypoly/geometry.hpp"
#include "barypoly/stationary.hpp"
#include "barypoly/verification.hpp"

using namespace barypoly;

static void BM_SolveAlpha(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_alpha(p));
}
BENCHMARK(BM_SolveAlpha)->Arg(3)->Arg(8)->Arg(64);

static void BM_ConjugateStep(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const ConjugateTuple u(random_unit_tuple(rng, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(conjugate_step(u));
}
BENCHMARK(BM_ConjugateStep)->Arg(3)->Arg(8)->Arg(32);

static void BM_Trajectory200(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  std::vector<double> u = random_unit_tuple(rng, p);
  std::sort(u.begin(), u.end());
  const ConjugateTuple u0(u);
  const double alpha = solve_alpha(p);
  for (auto _ : state) benchmark::DoNotOptimize(run_trajectory(u0, 200, alpha));
}
BENCHMARK(BM_Trajectory200)->Arg(3)->Arg(5)->Arg(8);

static void BM_DualSequence(benchmark::State& state) {
  const PointSet pentagon = regular_polygon(5);
  const WeightTuple t({0.3, 0.08, 0.06, 0.04, 0.01});
  for (auto _ : state) benchmark::DoNotOptimize(dual_sequence(pentagon, t, 60));
}
BENCHMARK(BM_DualSequence);

static void BM_PolygonStep(benchmark::State& state) {
  const PointSet pentagon = regular_polygon(5);
  const WeightTuple t({0.3, 0.08, 0.06, 0.04, 0.01});
  for (auto _ : state) benchmark::DoNotOptimize(polygon_step(pentagon, t));
}
BENCHMARK(BM_PolygonStep);

static void BM_SweepP5(benchmark::State& state) {
  SweepOptions opt;
  opt.p_min = opt.p_max = 5;
  opt.seeds = 10;
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(opt));
}
BENCHMARK(BM_SweepP5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
