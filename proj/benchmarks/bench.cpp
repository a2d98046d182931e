#include <benchmark/benchmark.h>

#include "hypermetric/complexes.hpp"
#include "hypermetric/metric_space.hpp"
#include "hypermetric/persistence.hpp"
#include "hypermetric/random.hpp"
#include "hypermetric/scaling.hpp"
#include "hypermetric/tight_span.hpp"

using namespace hypermetric;

static void BM_PersistenceCircleVr(benchmark::State& state) {
  const auto s = sample_circle(static_cast<std::size_t>(state.range(0)), 10.0);
  const auto f = vr_filtration(s, all_points(s), 2);
  for (auto _ : state) benchmark::DoNotOptimize(persistence(f));
  state.counters["simplices"] = static_cast<double>(f.simplices.size());
}
BENCHMARK(BM_PersistenceCircleVr)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

static void BM_VrFiltration(benchmark::State& state) {
  const auto s = random_metric(static_cast<std::size_t>(state.range(0)), 1);
  const auto ids = all_points(s);
  for (auto _ : state) benchmark::DoNotOptimize(vr_filtration(s, ids, 3));
}
BENCHMARK(BM_VrFiltration)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

static void BM_EnumerateFaces(benchmark::State& state) {
  const auto s = random_metric(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_faces(s));
}
BENCHMARK(BM_EnumerateFaces)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

static void BM_RhoTriple(benchmark::State& state) {
  const auto s = sample_circle(static_cast<std::size_t>(state.range(0)), 3.0);
  const auto witnesses = all_points(s);
  const auto m = s.size();
  for (auto _ : state) benchmark::DoNotOptimize(rho_triple(s, 0, m / 3, 2 * m / 3, witnesses));
}
BENCHMARK(BM_RhoTriple)->Arg(300)->Arg(3000);

static void BM_MaxTripleDeviation(benchmark::State& state) {
  const auto s = random_metric(static_cast<std::size_t>(state.range(0)), 5);
  const auto witnesses = all_points(s);
  for (auto _ : state) benchmark::DoNotOptimize(max_triple_deviation(s, witnesses));
}
BENCHMARK(BM_MaxTripleDeviation)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_LinfLambda(benchmark::State& state) {
  Rng rng(9);
  std::vector<std::vector<double>> pts(6, std::vector<double>(4));
  for (auto& p : pts)
    for (auto& x : p) x = rng.uniform();
  const std::vector<double> radii(6, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(linf_lambda_exact(pts, radii));
}
BENCHMARK(BM_LinfLambda);
BENCHMARK_MAIN();
