#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "a2torus/dynamics.hpp"
#include "a2torus/intmat.hpp"
#include "a2torus/surgery.hpp"
#include "a2torus/tricolor.hpp"

using namespace a2t;

static void BM_ClassifyConjugate(benchmark::State& state) {
  UniModularMatrix b{3, 2, 4, 3};
  auto m = multiply(multiply(b, normal_form(4)), inverse(b));
  for (auto _ : state) benchmark::DoNotOptimize(classify_periodic(m));
}
BENCHMARK(BM_ClassifyConjugate);

static void BM_Reduce(benchmark::State& state) {
  auto d = canonical_descriptor(2);
  for (int k = 0; k < state.range(0); ++k)
    d = expand(d, k % 2 ? MoveKind::ExpandAnnulus : MoveKind::ExpandDisk, 11 + k);
  for (auto _ : state) benchmark::DoNotOptimize(reduce_to_simplest(d));
}
BENCHMARK(BM_Reduce)->Arg(1)->Arg(3)->Arg(5);

static void BM_Gradient(benchmark::State& state) {
  auto f = g0_potential(4, 0.45);
  Vec2 p{0.31, 0.62};
  for (auto _ : state) benchmark::DoNotOptimize(f.gradient(p));
}
BENCHMARK(BM_Gradient);

static void BM_MapLift(benchmark::State& state) {
  ModelMap m;
  Vec2 p{0.21, 0.64};
  for (auto _ : state) benchmark::DoNotOptimize(map_lift(m, p));
}
BENCHMARK(BM_MapLift);

static void BM_Census(benchmark::State& state) {
  ModelMap m;
  SearchConfig cfg;
  cfg.grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_periodic_points(m, 3, cfg));
}
BENCHMARK(BM_Census)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_TricolorEquivalence(benchmark::State& state) {
  auto g = build_tricolor(extract_descriptor(ModelMap{}).cells);
  std::vector<int> order(g.size());
  for (int i = 0; i < g.size(); ++i) order[i] = (i * 5 + 3) % g.size();
  auto h = relabel(g, order);
  for (auto _ : state) benchmark::DoNotOptimize(tricolor_equivalent(g, h));
}
BENCHMARK(BM_TricolorEquivalence);
BENCHMARK_MAIN();
