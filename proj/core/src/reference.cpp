#include "samdde/reference.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>

namespace samdde {

ReferenceSolution reference_solve(const OscDDEProblem& p, int steps_per_segment) {
  validate_problem(p);
  const int k_steps = steps_per_segment;
  if (k_steps < 2) throw std::invalid_argument("reference_solve: K must be >= 2");
  const double h = p.delay / k_steps;
  if (h > p.period() / 10.0)
    std::cerr << "reference_solve: warning: h_ref = " << h
              << " does not resolve the fast period T = " << p.period() << "\n";

  const ButcherTableau tab = rk4_classical();
  const int s = tab.stages;
  const int d = p.dim;

  ReferenceSolution ref;
  ref.steps_per_segment = k_steps;
  ref.step = h;
  ref.dim = d;
  ref.segments = p.segments;
  ref.stages = s;
  ref.grid.assign(p.segments, std::vector<double>((k_steps + 1) * d));
  ref.stage_values.assign(p.segments,
                          std::vector<double>(static_cast<std::size_t>(k_steps) * s * d));

  const double two_pi = 2.0 * std::numbers::pi;
  Vec x0 = history_eval(p, 0.0);
  Vec x_del(d), f_out(d);
  std::vector<Vec> k(s, Vec(d));

  for (int ell = 1; ell <= p.segments; ++ell) {
    auto& grid = ref.grid[ell - 1];
    auto& stages = ref.stage_values[ell - 1];
    const double slow_offset = (ell - 1) * p.delay;
    std::copy(x0.begin(), x0.end(), grid.begin());
    Vec y = x0;
    for (int j = 0; j < k_steps; ++j) {
      for (int jp = 0; jp < s; ++jp) {
        Vec stage = y;
        for (int q = 0; q < jp; ++q) {
          const double a = tab.coeffs[jp][q];
          if (a != 0.0) axpy(h * a, k[q], stage);
        }
        const double t_seg = j * h + tab.abscissas[jp] * h;
        // Record before the delayed lookup so segment ell+1 finds it.
        std::copy(stage.begin(), stage.end(),
                  stages.begin() + (static_cast<std::size_t>(j) * s + jp) * d);
        if (ell == 1) {
          x_del = history_eval(p, t_seg - p.delay);
        } else {
          const double* src =
              &ref.stage_values[ell - 2][(static_cast<std::size_t>(j) * s + jp) * d];
          std::copy(src, src + d, x_del.begin());
        }
        const double phase = std::remainder(p.omega * (t_seg + slow_offset), two_pi);
        p.rhs(stage, x_del, t_seg + slow_offset, phase, p.omega, f_out);
        ++ref.rhs_evaluations;
        k[jp] = f_out;
      }
      for (int jp = 0; jp < s; ++jp) axpy(h * tab.weights[jp], k[jp], y);
      if (!all_finite(y))
        throw BlowUpError("reference_solve: non-finite state at segment " +
                          std::to_string(ell) + ", step " + std::to_string(j + 1));
      std::copy(y.begin(), y.end(), grid.begin() + static_cast<std::size_t>(j + 1) * d);
    }
    x0 = y;
  }
  return ref;
}

ErrorReport max_strobo_error(const StroboscopicSolution& sol,
                             const ReferenceSolution& ref, int component) {
  const int n_steps = sol.macro_steps;
  const int k_steps = ref.steps_per_segment;
  if (k_steps % n_steps != 0)
    throw std::invalid_argument("max_strobo_error: reference grid misaligned "
                                "(K must be a multiple of N)");
  const double period = sol.case_info.period;
  const double delay =
      sol.case_info.kind == DelayCase::CaseI
          ? sol.span
          : sol.case_info.periods_in_delay * period + sol.case_info.remainder;

  ErrorReport rep;
  rep.metric = ErrorMetric::MaxStrobo;
  rep.component = component;
  rep.oracle_step = ref.step;
  for (int ell = 1; ell <= static_cast<int>(sol.grid.size()); ++ell) {
    for (int n = 0; n <= n_steps; ++n) {
      const double t_abs = sol.node_time(ell, n, delay);
      const double cycles = t_abs / period;
      if (std::fabs(cycles - std::round(cycles)) > 1e-9) continue;
      // Segment time of this node on the reference grid.
      const double t_seg = n * sol.macro_step_size();
      const double jd = t_seg / ref.step;
      const long j = std::lround(jd);
      if (std::fabs(jd - j) > 1e-9 * k_steps)
        throw std::invalid_argument("max_strobo_error: stroboscopic node off the "
                                    "reference grid (choose K a multiple of N*span/tau)");
      const double diff =
          std::fabs(sol.grid[ell - 1][n][component] - ref.node(ell, j)[component]);
      rep.value = std::max(rep.value, diff);
      ++rep.compared_points;
    }
  }
  if (rep.compared_points == 0)
    throw std::invalid_argument("max_strobo_error: no stroboscopic nodes to compare");
  if (std::isnan(rep.value)) throw std::invalid_argument("max_strobo_error: NaN error");
  return rep;
}

ErrorReport endpoint_error(const StroboscopicSolution& sol,
                           const ReferenceSolution& ref, int component) {
  ErrorReport rep;
  rep.metric = ErrorMetric::Endpoint;
  rep.component = component;
  rep.oracle_step = ref.step;
  rep.compared_points = 1;
  const Vec& x = sol.final_value();
  rep.value = std::fabs(x[component] -
                        ref.node(ref.segments, ref.steps_per_segment)[component]);
  if (std::isnan(rep.value)) throw std::invalid_argument("endpoint_error: NaN error");
  return rep;
}

double observed_order(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3)
    throw std::invalid_argument("observed_order: need at least 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, err] : points) {
    if (!(x > 0.0) || !(err > 0.0))
      throw std::invalid_argument("observed_order: nonpositive datum");
    const double lx = std::log(x), ly = std::log(err);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  const double n = static_cast<double>(points.size());
  const double denom = n * sxx - sx * sx;
  if (std::fabs(denom) < 1e-300)
    throw std::invalid_argument("observed_order: degenerate abscissas");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace samdde
