#include <benchmark/benchmark.h>

#include <vector>

#include "gumbelscale/asymptotics.hpp"
#include "gumbelscale/brown_resnick.hpp"
#include "gumbelscale/fbm.hpp"
#include "gumbelscale/oracle.hpp"
#include "gumbelscale/quadrature.hpp"
#include "gumbelscale/rng.hpp"
#include "gumbelscale/tail_model.hpp"
#include "gumbelscale/triangular.hpp"
#include "gumbelscale/variance_model.hpp"

using namespace gumbelscale;

static void BM_QuadratureExpExp(benchmark::State& state) {
  const auto e = TailModel::exponential();
  const double u = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(product_tail_quadrature(u, e, e).log_value);
}
BENCHMARK(BM_QuadratureExpExp)->Arg(100)->Arg(10000)->Arg(1000000);

static void BM_QuadratureHalfNormal(benchmark::State& state) {
  const auto h = TailModel::half_normal();
  for (auto _ : state) benchmark::DoNotOptimize(product_tail_quadrature(30.0, h, h).log_value);
}
BENCHMARK(BM_QuadratureHalfNormal);

static void BM_AsymptoticFormula(benchmark::State& state) {
  const auto a = TailModel::abs_normal();
  for (auto _ : state) benchmark::DoNotOptimize(product_tail_weibullian_log(30.0, a, a));
}
BENCHMARK(BM_AsymptoticFormula);

static void BM_ConditionalMc(benchmark::State& state) {
  const auto e = TailModel::exponential();
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(conditional_mc_tail(25.0, e, e, m, 7).log_estimate);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * m));
}
BENCHMARK(BM_ConditionalMc)->Arg(100000);

static void BM_FbmPath(benchmark::State& state) {
  const auto steps = static_cast<std::size_t>(state.range(0));
  const FbmSampler sampler(0.75, steps);
  std::vector<double> path;
  Rng rng(1);
  for (auto _ : state) {
    sampler.sample(rng, path);
    benchmark::DoNotOptimize(path.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * steps));
}
BENCHMARK(BM_FbmPath)->Arg(256)->Arg(1024)->Arg(8192);

static void BM_BrownResnickDraw(benchmark::State& state) {
  std::vector<double> grid;
  for (int i = 0; i < state.range(0); ++i) grid.push_back(i / static_cast<double>(state.range(0)));
  const BrownResnickSampler br(Variogram::power(2.0, 1.0), grid);
  Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(br.draw(rng).values.data());
}
BENCHMARK(BM_BrownResnickDraw)->Arg(2)->Arg(16);

static void BM_TriangularDraw(benchmark::State& state) {
  const TriangularSampler s(static_cast<std::size_t>(state.range(0)), {0.0, 1.0},
                            Variogram::power(2.0, 1.0), TailModel::point_mass_one());
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(s.draw(rng).data());
}
BENCHMARK(BM_TriangularDraw)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
