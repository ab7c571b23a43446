// Microbenchmarks for the hot paths: the Laplacian (apply, fast solve,
// reference solve) and one structure-preserving MHD step.

#include <benchmark/benchmark.h>

#include "lpflow/integrators.hpp"
#include "lpflow/models.hpp"
#include "lpflow/quantization.hpp"
#include "lpflow/random_state.hpp"

namespace {

void BM_LaplacianApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const lpflow::QuantizationContext ctx(n);
  const lpflow::CMatrix w = lpflow::random_su(ctx, n - 1, 2.0, 1.0, 42);
  for (auto _ : state) {
    lpflow::CMatrix out = lpflow::laplacian_apply(w, ctx);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_LaplacianApply)->Arg(16)->Arg(32)->Arg(64)->Arg(128);

void BM_LaplacianSolveFast(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const lpflow::QuantizationContext ctx(n);
  const lpflow::CMatrix w = lpflow::random_su(ctx, n - 1, 2.0, 1.0, 42);
  for (auto _ : state) {
    lpflow::CMatrix out = lpflow::laplacian_solve(w, ctx, lpflow::LaplacianPath::fast);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_LaplacianSolveFast)->Arg(16)->Arg(32)->Arg(64)->Arg(128);

void BM_LaplacianSolveReference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const lpflow::QuantizationContext ctx(n);
  const lpflow::CMatrix w = lpflow::random_su(ctx, n - 1, 2.0, 1.0, 42);
  for (auto _ : state) {
    lpflow::CMatrix out = lpflow::laplacian_solve(w, ctx, lpflow::LaplacianPath::reference);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_LaplacianSolveReference)->Arg(16)->Arg(32)->Arg(64);

void BM_MhdStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const lpflow::QuantizationContext ctx(n);
  const lpflow::MhdModel model(ctx);
  const lpflow::CMatrix w0 = lpflow::random_su(ctx, n - 1, 2.0, 0.5, 7);
  const lpflow::CMatrix t0 = lpflow::random_su(ctx, n - 1, 2.0, 0.5, 8);
  const lpflow::StepConfig cfg{0.1, {1e-13, 100}};
  for (auto _ : state) {
    auto [w, theta] = lpflow::magnetic_midpoint_step(w0, t0, model.pair_maps(), cfg);
    benchmark::DoNotOptimize(w.data());
    benchmark::DoNotOptimize(theta.data());
  }
}
BENCHMARK(BM_MhdStep)->Arg(8)->Arg(16)->Arg(32);

void BM_ContextBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    lpflow::QuantizationContext ctx(n);
    benchmark::DoNotOptimize(&ctx);
  }
}
BENCHMARK(BM_ContextBuild)->Arg(16)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
