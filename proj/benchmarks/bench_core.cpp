#include <benchmark/benchmark.h>

#include <cmath>

#include "nldp/multiplier.hpp"
#include "nldp/presets.hpp"
#include "nldp/scheme.hpp"
#include "nldp/stencil.hpp"

namespace {

using namespace nldp;

void BM_BuildStencilFractional(benchmark::State& state) {
  const double dx = 1.0 / static_cast<double>(state.range(0));
  const LevyMeasure mu = measure_preset("fractional");
  for (auto _ : state) benchmark::DoNotOptimize(build_stencil(mu, dx, dx, 0.25));
}
BENCHMARK(BM_BuildStencilFractional)->Arg(128)->Arg(512)->Arg(2048);

void BM_ApplyStencil(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double dx = 1.0 / n;
  const StencilWeights s = build_stencil(measure_preset("fractional"), dx, dx, 0.25);
  Grid g;
  g.dim = 1;
  g.n = {n, 1};
  g.dx = dx;
  Field v(g);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::sin(7.0 * g.center(k)[0]);
  const PointFn zero = [](const Point&) { return 0.0; };
  for (auto _ : state) benchmark::DoNotOptimize(apply_stencil(v, s, zero, 0.0));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ApplyStencil)->Arg(256)->Arg(1024)->Arg(4096);

void BM_SchemeStep(benchmark::State& state) {
  SchemeConfig cfg;
  cfg.dx = 1.0 / static_cast<double>(state.range(0));
  cfg.Z = 0.25;
  const ProblemSpec spec = problem_preset("burgers_bump");
  const Scheme scheme(spec, build_scheme_stencil(measure_preset("fractional_trunc"), cfg), cfg);
  const Field u = scheme.initial();
  for (auto _ : state) benchmark::DoNotOptimize(scheme.step(u, 0.0, scheme.dt()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SchemeStep)->Arg(256)->Arg(1024);

void BM_SchemeStep2d(benchmark::State& state) {
  SchemeConfig cfg;
  cfg.dx = 1.0 / static_cast<double>(state.range(0));
  cfg.Z = 0.125;
  const ProblemSpec spec = problem_preset("ball2d");
  const Scheme scheme(spec, build_scheme_stencil(measure_preset("atomic", 2), cfg), cfg);
  const Field u = scheme.initial();
  for (auto _ : state) benchmark::DoNotOptimize(scheme.step(u, 0.0, scheme.dt()));
}
BENCHMARK(BM_SchemeStep2d)->Arg(32)->Arg(64);

// Fresh evaluator per batch so the per-xi cache does not hide the quadrature.
void BM_MultiplierFractionalTruncated(benchmark::State& state) {
  const LevyMeasure mu = measure_preset("fractional_trunc");
  double xi = 1.0;
  for (auto _ : state) {
    const MultiplierEval ev(mu);
    for (int i = 0; i < 64; ++i) benchmark::DoNotOptimize(ev(xi + 0.37 * i));
    xi += 1e-3;
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_MultiplierFractionalTruncated);

void BM_MultiplierDyadicB(benchmark::State& state) {
  const LevyMeasure mu = LevyMeasure::dyadic_b();
  for (auto _ : state) {
    const MultiplierEval ev(mu);
    for (int i = 1; i <= 64; ++i) benchmark::DoNotOptimize(ev(std::ldexp(1.1, i % 30)));
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_MultiplierDyadicB);

}  // namespace

BENCHMARK_MAIN();
