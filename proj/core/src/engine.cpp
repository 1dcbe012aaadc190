#include "samdde/engine.hpp"

#include <cmath>
#include <sstream>

namespace samdde {

SAMConfig make_config(SamMethod method, int macro_steps, int micro_steps_per_period) {
  if (macro_steps < 1) throw std::invalid_argument("macro_steps must be >= 1");
  SAMConfig cfg;
  switch (method) {
    case SamMethod::RK2: cfg.macro_tableau = rk2_midpoint(); break;
    case SamMethod::RK3: cfg.macro_tableau = rk3_heun(); break;
    case SamMethod::RK4: cfg.macro_tableau = rk4_classical(); break;
  }
  cfg.micro_tableau = cfg.macro_tableau;
  cfg.schedule = builtin_schedule(method);
  cfg.macro_steps = macro_steps;
  cfg.micro_steps_per_period =
      micro_steps_per_period > 0 ? micro_steps_per_period : 2 * macro_steps;
  return cfg;
}

DelayedFn history_provider(const OscDDEProblem& p) {
  return [&p](const MicroKey&, int, double seg_time) {
    return history_eval(p, seg_time - p.delay);
  };
}

DelayedFn store_provider(const MicroStore& prev, int ell) {
  return [&prev, ell](const MicroKey& key, int tail_step, double seg_time) {
    const Vec* v = tail_step >= 0 ? prev.find_tail(tail_step, key.micro_stage)
                                  : prev.find(key);
    if (!v) {
      std::ostringstream os;
      os << "delayed-value miss in segment " << ell << " at ";
      if (tail_step >= 0)
        os << "tail step " << tail_step << ", stage " << key.micro_stage;
      else
        os << "key (n=" << key.macro_step << ", j=" << key.macro_stage
           << ", leg=" << key.leg << ", nu=" << key.micro_step
           << ", j'=" << key.micro_stage << ")";
      os << ", segment time " << seg_time;
      throw std::runtime_error(os.str());
    }
    return *v;
  };
}

namespace {

/// f wrapper shared by the micro propagations and the Case II tail.
/// `elapsed` is micro time measured from the start of the current micro
/// integration; phase = phase_offset + Omega*elapsed by contract.
Vec eval_oscillatory_rhs(const SegmentContext& ctx, const Vec& y, const Vec& x_del,
                         double seg_time, double elapsed) {
  const OscDDEProblem& p = *ctx.problem;
  Vec out(p.dim);
  const double phase = ctx.phase_offset + p.omega * elapsed;
  p.rhs(y, x_del, ctx.slow_offset + seg_time, phase, p.omega, out);
  if (ctx.eval_count) ++*ctx.eval_count;
  return out;
}

}  // namespace

Vec micro_propagate(const SegmentContext& ctx, const Vec& y0, double start_time,
                    int macro_step, int macro_stage, int direction, int periods,
                    const SAMConfig& cfg, std::vector<Vec>* period_endpoints) {
  if (direction != 1 && direction != -1) throw std::invalid_argument("direction must be +-1");
  if (periods < 1) throw std::invalid_argument("periods must be >= 1");
  const int m = cfg.micro_steps_per_period;
  const double h = ctx.problem->period() / m;
  const double dt = direction * h;
  const int leg = direction > 0 ? 0 : 1;
  if (period_endpoints) period_endpoints->clear();

  Vec y = y0;
  for (int nu = 0; nu < periods * m; ++nu) {
    const double elapsed0 = nu * dt;
    int stage = 0;
    auto rhs = [&](double elapsed, const Vec& y_stage) {
      MicroKey key{macro_step, macro_stage, leg, nu, stage};
      if (ctx.sink) ctx.sink->put(key, y_stage);
      Vec x_del = ctx.delayed(key, /*tail_step=*/-1, start_time + elapsed);
      ++stage;
      return eval_oscillatory_rhs(ctx, y_stage, x_del, start_time + elapsed, elapsed);
    };
    y = rk_step(cfg.micro_tableau, rhs, elapsed0, y, dt);
    if (!all_finite(y))
      throw BlowUpError("non-finite state in micro step " + std::to_string(nu) +
                        " of segment " + std::to_string(ctx.ell));
    if (period_endpoints && (nu + 1) % m == 0) period_endpoints->push_back(y);
  }
  return y;
}

Vec eval_averaged_rhs(const SegmentContext& ctx, int macro_step, int macro_stage,
                      double stage_time, const Vec& w, const Stencil& st,
                      const SAMConfig& cfg) {
  const int k_min = st.min_offset();
  const int k_max = st.max_offset();
  std::vector<Vec> forward, backward;
  if (k_max > 0)
    micro_propagate(ctx, w, stage_time, macro_step, macro_stage, +1, k_max, cfg,
                    &forward);
  if (k_min < 0)
    micro_propagate(ctx, w, stage_time, macro_step, macro_stage, -1, -k_min, cfg,
                    &backward);
  std::vector<Vec> nodes;
  nodes.reserve(st.offsets.size());
  for (int k : st.offsets) {
    if (k == 0)
      nodes.push_back(w);
    else if (k > 0)
      nodes.push_back(forward[k - 1]);
    else
      nodes.push_back(backward[-k - 1]);
  }
  return stencil_apply(st, nodes, ctx.problem->period());
}

const Stencil* pick_stencil(const StencilSchedule& sch, double stage_time,
                            double period, double span) {
  const double tol = 1e-9 * span;
  if (stage_time + sch.interior.min_offset() * period < -tol) return &sch.at_start;
  if (stage_time + sch.interior.max_offset() * period > span + tol)
    return sch.at_end ? &*sch.at_end : nullptr;
  return &sch.interior;
}

std::vector<Vec> macro_integrate_segment(const SegmentContext& ctx, const Vec& X0,
                                         double span, const SAMConfig& cfg) {
  const int n_steps = cfg.macro_steps;
  const double big_h = span / n_steps;
  const double period = ctx.problem->period();
  const ButcherTableau& tab = cfg.macro_tableau;

  std::vector<Vec> grid;
  grid.reserve(n_steps + 1);
  grid.push_back(X0);
  std::vector<Vec> f_stage(tab.stages);
  for (int n = 0; n < n_steps; ++n) {
    const Vec& xn = grid.back();
    for (int j = 0; j < tab.stages; ++j) {
      Vec w = xn;
      for (int q = 0; q < j; ++q) {
        const double a = tab.coeffs[j][q];
        if (a != 0.0) axpy(big_h * a, f_stage[q], w);
      }
      const double theta = n * big_h + tab.abscissas[j] * big_h;
      const Stencil* st = pick_stencil(cfg.schedule, theta, period, span);
      if (!st)
        throw ValidityError({n, j, cfg.schedule.interior.max_offset(), theta,
                             "no stencil fits at stage time " + std::to_string(theta)});
      f_stage[j] = eval_averaged_rhs(ctx, n, j, theta, w, *st, cfg);
    }
    Vec next = xn;
    for (int j = 0; j < tab.stages; ++j) {
      const double b = tab.weights[j];
      if (b != 0.0) axpy(big_h * b, f_stage[j], next);
    }
    if (!all_finite(next))
      throw BlowUpError("non-finite macro state at step " + std::to_string(n + 1) +
                        " of segment " + std::to_string(ctx.ell));
    grid.push_back(std::move(next));
  }
  return grid;
}

std::optional<ValidityIssue> validity_check(const OscDDEProblem& p,
                                            const SAMConfig& cfg,
                                            const CaseInfo& info) {
  const double period = info.period;
  const double span = info.kind == DelayCase::CaseI
                          ? p.delay
                          : info.periods_in_delay * period;
  const double big_h = span / cfg.macro_steps;
  if (big_h < period * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "macro step H = " << big_h << " smaller than the fast period T = "
       << period << ": the multiscale premise fails";
    return ValidityIssue{0, 0, 0, 0.0, os.str()};
  }
  const double tol = 1e-9 * span;
  for (int n = 0; n < cfg.macro_steps; ++n) {
    for (int j = 0; j < cfg.macro_tableau.stages; ++j) {
      const double theta = n * big_h + cfg.macro_tableau.abscissas[j] * big_h;
      const Stencil* st = pick_stencil(cfg.schedule, theta, period, span);
      auto issue = [&](int offset) {
        std::ostringstream os;
        os << "stencil window leaves [0, span] at macro step n=" << n
           << ", stage j=" << j << ", offset k=" << offset
           << " (stage time " << theta << ", span " << span << ")";
        return ValidityIssue{n, j, offset, theta, os.str()};
      };
      if (!st) return issue(cfg.schedule.interior.max_offset());
      if (theta + st->min_offset() * period < -tol) return issue(st->min_offset());
      if (theta + st->max_offset() * period > span + tol) return issue(st->max_offset());
    }
  }
  return std::nullopt;
}

namespace {

StroboscopicSolution solve_impl(const OscDDEProblem& p, const SAMConfig& cfg,
                                const CaseInfo& info) {
  if (auto bad = validity_check(p, cfg, info)) throw ValidityError(*bad);

  const bool case2 = info.kind == DelayCase::CaseII;
  const double period = info.period;
  const double span = case2 ? info.periods_in_delay * period : p.delay;
  const int m = cfg.micro_steps_per_period;
  const double h = period / m;

  StroboscopicSolution sol;
  sol.case_info = info;
  sol.span = span;
  sol.macro_steps = cfg.macro_steps;
  sol.micro_steps_per_period = m;
  sol.grid.resize(p.segments);
  if (case2) sol.tail_endpoint.resize(p.segments);

  MicroStore store_a, store_b;
  MicroStore* prev = &store_a;
  MicroStore* cur = &store_b;

  Vec x0 = history_eval(p, 0.0);
  for (int ell = 1; ell <= p.segments; ++ell) {
    SegmentContext ctx;
    ctx.problem = &p;
    ctx.ell = ell;
    ctx.slow_offset = (ell - 1) * p.delay;
    ctx.phase_offset = segment_phase_offset(p, ell);
    ctx.delayed = ell == 1 ? history_provider(p) : store_provider(*prev, ell);
    ctx.sink = cur;
    ctx.eval_count = &sol.rhs_evaluations;

    sol.grid[ell - 1] = macro_integrate_segment(ctx, x0, span, cfg);
    x0 = sol.grid[ell - 1].back();

    if (case2) {
      // Short oscillatory tail from M*T to tau with the micro integrator.
      const double r = info.remainder;
      const int full_steps = static_cast<int>(std::floor(r / h + 1e-12));
      const double rem = r - full_steps * h;
      Vec y = x0;
      int tail_index = 0;
      auto tail_step = [&](double e0, double dt) {
        int stage = 0;
        auto rhs = [&](double elapsed, const Vec& y_stage) {
          MicroKey key{0, 0, 0, tail_index, stage};
          if (ctx.sink) ctx.sink->put_tail(tail_index, stage, y_stage);
          Vec x_del = ctx.delayed(key, tail_index, span + elapsed);
          ++stage;
          return eval_oscillatory_rhs(ctx, y_stage, x_del, span + elapsed, elapsed);
        };
        y = rk_step(cfg.micro_tableau, rhs, e0, y, dt);
        if (!all_finite(y))
          throw BlowUpError("non-finite state in tail step " +
                            std::to_string(tail_index) + " of segment " +
                            std::to_string(ell));
        ++tail_index;
      };
      for (int q = 0; q < full_steps; ++q) tail_step(q * h, h);
      if (rem > 1e-12 * period) tail_step(full_steps * h, rem);
      sol.tail_endpoint[ell - 1] = y;
      x0 = y;
    }

    std::swap(prev, cur);
    cur->clear();
  }
  return sol;
}

}  // namespace

StroboscopicSolution solve_case1(const OscDDEProblem& p, const SAMConfig& cfg) {
  validate_problem(p);
  const CaseInfo info = classify_case(p);
  if (info.kind != DelayCase::CaseI)
    throw std::invalid_argument("solve_case1: delay is not an integer multiple of the period");
  return solve_impl(p, cfg, info);
}

StroboscopicSolution solve_case2(const OscDDEProblem& p, const SAMConfig& cfg) {
  validate_problem(p);
  const CaseInfo info = classify_case(p);
  if (info.kind != DelayCase::CaseII)
    throw std::invalid_argument("solve_case2: delay is an integer multiple of the period");
  return solve_impl(p, cfg, info);
}

StroboscopicSolution solve(const OscDDEProblem& p, const SAMConfig& cfg) {
  validate_problem(p);
  const CaseInfo info = classify_case(p);
  return solve_impl(p, cfg, info);
}

}  // namespace samdde
