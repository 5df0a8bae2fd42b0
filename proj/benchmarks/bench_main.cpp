#include <benchmark/benchmark.h>

#include <cmath>

#include "nsalpha/evolution.hpp"
#include "nsalpha/random_field.hpp"
#include "nsalpha/spectral_ops.hpp"

using namespace nsalpha;

namespace {

SolenoidalField field(const TorusGrid& g, double rms) {
  auto u = random_solenoidal(g, 1, -1.0);
  u *= rms * std::sqrt(g.volume()) / l2_norm(u);
  return u;
}

void BM_TransformRoundTrip(benchmark::State& state) {
  const TorusGrid g(2.0 * M_PI, static_cast<int>(state.range(0)));
  const auto u = field(g, 1.0);
  for (auto _ : state) {
    auto p = to_physical(u.field());
    benchmark::DoNotOptimize(to_spectral(g, p));
  }
}
BENCHMARK(BM_TransformRoundTrip)->Arg(16)->Arg(32)->Arg(64);

void BM_NonlinearTerm(benchmark::State& state) {
  const TorusGrid g(2.0 * M_PI, static_cast<int>(state.range(0)));
  const auto u = field(g, 1.0);
  const auto ua = helmholtz_filter(u, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(nonlinear_term(u, ua));
}
BENCHMARK(BM_NonlinearTerm)->Arg(16)->Arg(32);

void BM_FilterSolve(benchmark::State& state) {
  const TorusGrid g(2.0 * M_PI, static_cast<int>(state.range(0)));
  const FilterProblem p{0.5, IndicatorSpec::smooth_local(0.3, 1.0), MollifierSpec::cutoff(4.0), g};
  const auto u = field(g, 2.0);
  int iterations = 0;
  for (auto _ : state) {
    auto sol = solve_filter(p, u);
    iterations = sol.iterations;
    benchmark::DoNotOptimize(sol);
  }
  state.counters["pcg_iterations"] = iterations;
}
BENCHMARK(BM_FilterSolve)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Step(benchmark::State& state) {
  const TorusGrid g(2.0 * M_PI, 16);
  const FilterProblem p{0.5, IndicatorSpec::smooth_local(0.5, 1.0), MollifierSpec::cutoff(4.0), g};
  const auto model = AdvectionModel::alpha_model(p);
  const auto forcing = random_shell_forcing(g, 7, 1.0, 3.0, 1.0);
  StepConfig c;
  c.scheme = state.range(0) == 0 ? Scheme::duhamel_picard : Scheme::imex_cn;
  auto s = step(initial_state(field(g, 1.0), model), c, forcing, model);
  for (auto _ : state) benchmark::DoNotOptimize(step(s, c, forcing, model));
  state.SetLabel(state.range(0) == 0 ? "duhamel_picard" : "imex_cn");
}
BENCHMARK(BM_Step)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
