// SPDX-License-Identifier: Apache-2.0
// Serial reference versus OpenMP kernels: projector quadrature, DN hierarchy,
// Cauchy β-derivatives and the perturbative projector coefficients.
#include "stw/kato_engine.hpp"
#include "stw/parallel.hpp"

#include <benchmark/benchmark.h>

namespace {

const stw::AssemblyContext& context() {
  static const stw::AssemblyContext ctx = stw::make_context(stw::solve_resonance(), 32);
  return ctx;
}

stw::Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? stw::Exec::serial : stw::Exec::parallel;
}

void BM_Projector(benchmark::State& state) {
  const auto& ctx = context();
  const stw::Mat l = stw::assemble_L(0.01, -0.001, ctx, stw::LMode::direct_beta).m;
  const stw::ContourSpec c = stw::default_contour(ctx.res);
  for (auto _ : state) benchmark::DoNotOptimize(stw::projector(l, c, exec_of(state)));
}

void BM_ProjectorReference(benchmark::State& state) {
  const auto& ctx = context();
  const stw::Mat l = stw::assemble_L(0.01, -0.001, ctx, stw::LMode::direct_beta).m;
  const stw::ContourSpec c = stw::default_contour(ctx.res);
  for (auto _ : state) benchmark::DoNotOptimize(stw::projector_reference(l, c));
}

void BM_Hierarchy(benchmark::State& state) {
  const double beta = context().res.beta_star;
  for (auto _ : state) benchmark::DoNotOptimize(stw::hierarchy_multipliers(beta, -32, 32, exec_of(state)));
}

void BM_BetaTaylor(benchmark::State& state) {
  const double beta = context().res.beta_star;
  for (auto _ : state) benchmark::DoNotOptimize(stw::beta_taylor(3, beta, -32, 32, {}, exec_of(state)));
}

void BM_ApplyAll(benchmark::State& state) {
  const auto& ctx = context();
  const stw::PerturbativeKato engine(ctx, stw::default_contour(ctx.res), exec_of(state));
  const stw::Vec u = stw::basis_U(1, ctx.res, ctx.k_max);
  for (auto _ : state) benchmark::DoNotOptimize(engine.apply_all(u, 3));
}

}  // namespace

// Argument 0 = serial, 1 = OpenMP.
BENCHMARK(BM_Projector)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ProjectorReference)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Hierarchy)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BetaTaylor)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ApplyAll)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

int main(int argc, char** argv) {
  stw::apply_thread_cap();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
