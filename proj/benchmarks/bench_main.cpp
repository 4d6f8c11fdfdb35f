#include <benchmark/benchmark.h>

#include "curlspec/antisym_tube.hpp"
#include "curlspec/bessel.hpp"
#include "curlspec/cross_section.hpp"
#include "curlspec/exact_rational.hpp"
#include "curlspec/grad_shafranov.hpp"

using namespace curlspec;

static void BM_BesselJ(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel::j(n, x));
    x = x < 60.0 ? x + 0.37 : 0.1;
  }
}
BENCHMARK(BM_BesselJ)->Arg(0)->Arg(2)->Arg(10);

static void BM_BesselY(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel::y(n, x));
    x = x < 60.0 ? x + 0.37 : 0.1;
  }
}
BENCHMARK(BM_BesselY)->Arg(0)->Arg(2)->Arg(10);

static void BM_BesselZero(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bessel::zero({1, 3}));
}
BENCHMARK(BM_BesselZero);

static void BM_Certificate(benchmark::State& state) {
  const auto s = BigRational::parse("287/100");
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact::certify_negativity(s, m).verdict);
}
BENCHMARK(BM_Certificate)->Arg(5)->Arg(20);

static void BM_LaplacianDisk(benchmark::State& state) {
  const auto disk = CrossSection::disk(2.0, 1.0);
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gs::laplacian_dirichlet_lambda1(disk, h).value);
  state.SetLabel(std::to_string(gs::interior_node_count(disk, h)) + " nodes");
}
BENCHMARK(BM_LaplacianDisk)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_FluxFreeRectangle(benchmark::State& state) {
  const auto rect = CrossSection::rectangle(1, 2, -1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gs::solve_flux_free(rect, 1.0 / 32).lambda);
}
BENCHMARK(BM_FluxFreeRectangle)->Unit(benchmark::kMillisecond);

static void BM_JStarScan(benchmark::State& state) {
  antisym::JStarConfig cfg;
  cfg.step = 0.005;
  cfg.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(antisym::j_star_m(1, cfg).value);
}
BENCHMARK(BM_JStarScan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_GRoot(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(antisym::find_theorem2_parameters(1.0).a);
}
BENCHMARK(BM_GRoot)->Unit(benchmark::kMillisecond);

static void BM_DiskModeScan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(antisym::scan_disk_roots(1.0, 6.283185307179586, {}).size());
}
BENCHMARK(BM_DiskModeScan)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
