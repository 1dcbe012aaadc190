#include <benchmark/benchmark.h>

#include "samdde/engine.hpp"
#include "samdde/problems.hpp"
#include "samdde/reference.hpp"

namespace {

using namespace samdde;

void bm_micro_propagate(benchmark::State& state) {
  const OscDDEProblem p = toggle_problem(16.0 * 3.141592653589793);
  const SAMConfig cfg = make_config(SamMethod::RK4, 4);
  SegmentContext ctx;
  ctx.problem = &p;
  ctx.ell = 1;
  ctx.delayed = history_provider(p);
  unsigned long long evals = 0;
  ctx.eval_count = &evals;
  const Vec y0 = {0.5, 2.0};
  for (auto _ : state) {
    Vec y = micro_propagate(ctx, y0, 0.0, 0, 0, 1, 2, cfg);
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(bm_micro_propagate);

void bm_solve_case1(benchmark::State& state) {
  const OscDDEProblem p = toggle_problem(32.0 * 3.141592653589793);
  const SAMConfig cfg = make_config(SamMethod::RK4, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto sol = solve_case1(p, cfg);
    benchmark::DoNotOptimize(sol.final_value());
  }
}
BENCHMARK(bm_solve_case1)->Arg(2)->Arg(4);

void bm_reference_solve(benchmark::State& state) {
  const OscDDEProblem p = toggle_problem(16.0 * 3.141592653589793);
  for (auto _ : state) {
    auto ref = reference_solve(p, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(ref.rhs_evaluations);
  }
}
BENCHMARK(bm_reference_solve)->Arg(1024)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
