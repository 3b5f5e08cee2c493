#include <benchmark/benchmark.h>

#include "dbscale/fncore.hpp"
#include "dbscale/numerics.hpp"
#include "dbscale/operator.hpp"

using namespace dbscale;

static void BM_Kernel(benchmark::State& state) {
  const DbSpace space = DbSpace::paley_wiener(1.0);
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel(space, Cplx(x, 0.3), Cplx(0.2, 1.0)));
    x += 1e-3;
  }
}
BENCHMARK(BM_Kernel);

static void BM_InnerSampling(benchmark::State& state) {
  const DbSpace space = DbSpace::paley_wiener(1.0);
  const EntireFn f = EntireFn::kernel(Cplx(0.5, 1.0));
  const EntireFn g = EntireFn::kernel(Cplx(-0.3, 0.7));
  for (auto _ : state) benchmark::DoNotOptimize(inner_B(space, f, g));
}
BENCHMARK(BM_InnerSampling)->Unit(benchmark::kMillisecond);

static void BM_InnerQuadrature(benchmark::State& state) {
  const DbSpace space = DbSpace::paley_wiener(1.0).with_engine(IpEngine::quadrature());
  const EntireFn f = EntireFn::kernel(Cplx(0.5, 1.0));
  const EntireFn g = EntireFn::kernel(Cplx(-0.3, 0.7));
  for (auto _ : state) benchmark::DoNotOptimize(inner_B(space, f, g));
}
BENCHMARK(BM_InnerQuadrature)->Unit(benchmark::kMillisecond);

static void BM_ResolventEval(benchmark::State& state) {
  const ExtensionHandle ext(DbSpace::paley_wiener(1.0), 0.0);
  const EntireFn r = resolvent_apply(ext, Cplx(0.0, 1.0), EntireFn::kernel(0.5));
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fn_eval(r, ext.space(), Cplx(x, 0.1)));
    x += 1e-3;
  }
}
BENCHMARK(BM_ResolventEval);

static void BM_FindZeros(benchmark::State& state) {
  const DbSpace space = DbSpace::paley_wiener(static_cast<double>(state.range(0)));
  const RootWindow window{-20.0, 20.0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(find_zeros(space, 0.3, window));
}
BENCHMARK(BM_FindZeros)->Arg(1)->Arg(4)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
