#include <benchmark/benchmark.h>

#include "hermitlab/catalog.hpp"
#include "hermitlab/chern.hpp"
#include "hermitlab/classify.hpp"
#include "hermitlab/curvature_compare.hpp"
#include "hermitlab/fd_oracle.hpp"
#include "hermitlab/levicivita.hpp"
#include "hermitlab/nilker.hpp"

using namespace hermitlab;

namespace {

std::vector<Complex> first_point(const CatalogEntry& e) { return sample_points(e.metric, e.region, 1)[0]; }

const char* metric_name(int i) {
  static const char* names[] = {"euclidean", "gkl_surface", "iwasawa", "random_polynomial:3"};
  return names[i];
}

}  // namespace

static void BM_ParseEval(benchmark::State& state) {
  const Expr e = parse("(abs2(z1) + abs2(z2))^-2 * exp(re(z1*conj(z2)))", 2);
  const std::vector<Complex> p{{0.3, 0.2}, {-0.1, 0.5}};
  for (auto _ : state) benchmark::DoNotOptimize(e.eval(p));
}
BENCHMARK(BM_ParseEval);

static void BM_ChernAt(benchmark::State& state) {
  const auto e = catalog_get(metric_name(static_cast<int>(state.range(0))));
  const auto p = first_point(e);
  state.SetLabel(e.metric.name);
  for (auto _ : state) benchmark::DoNotOptimize(chern_at(e.metric, p));
}
BENCHMARK(BM_ChernAt)->DenseRange(0, 3);

static void BM_RiemannAt(benchmark::State& state) {
  const auto e = catalog_get(metric_name(static_cast<int>(state.range(0))));
  const auto p = first_point(e);
  state.SetLabel(e.metric.name);
  for (auto _ : state) benchmark::DoNotOptimize(riemann_at(e.metric, p));
}
BENCHMARK(BM_RiemannAt)->DenseRange(0, 3);

static void BM_ClassifyPoint(benchmark::State& state) {
  const auto e = catalog_get("iwasawa");
  const auto pts = sample_points(e.metric, e.region, 1);
  for (auto _ : state) benchmark::DoNotOptimize(classify_at(e.metric, pts));
}
BENCHMARK(BM_ClassifyPoint);

static void BM_TorsionCurvature(benchmark::State& state) {
  const auto e = catalog_get("random_polynomial:3");
  const auto a = analyze_point(e.metric, first_point(e));
  for (auto _ : state) benchmark::DoNotOptimize(torsion_curvature_suite(a));
}
BENCHMARK(BM_TorsionCurvature);

static void BM_FdOracle(benchmark::State& state) {
  const auto e = catalog_get("iwasawa");
  const auto p = first_point(e);
  for (auto _ : state) benchmark::DoNotOptimize(fd_oracle(e.metric, p));
}
BENCHMARK(BM_FdOracle)->Unit(benchmark::kMillisecond);

static void BM_Rigidity(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(n3_rigidity_search(static_cast<int>(state.range(0)), 0x5EED, RigiditySystem::Completed));
}
BENCHMARK(BM_Rigidity)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_KernelInductive(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<NilFixture> fx;
  for (int i = 0; i < 32; ++i) fx.push_back(random_fixture(rng));
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(common_kernel_inductive(fx[k++ % fx.size()].family));
}
BENCHMARK(BM_KernelInductive);

static void BM_KernelConstructive(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<NilFixture> fx;
  for (int i = 0; i < 32; ++i) fx.push_back(random_fixture(rng));
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& f = fx[k++ % fx.size()];
    benchmark::DoNotOptimize(common_kernel_constructive(f.T, f.X));
  }
}
BENCHMARK(BM_KernelConstructive);

BENCHMARK_MAIN();
