#include "samdde/problem.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace samdde {

void validate_problem(const OscDDEProblem& p) {
  if (p.dim <= 0) throw std::invalid_argument("problem: dim must be positive");
  if (!p.rhs) throw std::invalid_argument("problem: rhs not set");
  if (!p.history) throw std::invalid_argument("problem: history not set");
  if (!(p.delay > 0.0)) throw std::invalid_argument("problem: delay must be > 0");
  if (!(p.omega > 0.0)) throw std::invalid_argument("problem: omega must be > 0");
  if (p.segments <= 0) throw std::invalid_argument("problem: segments must be positive");
  const double ratio = p.horizon / p.delay;
  if (std::fabs(ratio - p.segments) > 1e-12 * std::max(1.0, ratio))
    throw std::invalid_argument(
        "problem: horizon must be an exact integer multiple of the delay "
        "(either raise the horizon to the next multiple or finish the last "
        "stretch with a conventional integrator; neither is done here)");
}

CaseInfo classify_case(const OscDDEProblem& p, double tol_case) {
  if (!(tol_case > 0.0) || tol_case > 1e-6)
    throw std::invalid_argument("tol_case must be in (0, 1e-6]");
  CaseInfo info;
  info.period = p.period();
  const double ratio = p.omega * p.delay / (2.0 * std::numbers::pi);
  if (ratio < 1.0 - tol_case)
    throw std::invalid_argument("delay shorter than one fast period: the method's premises fail");
  int m = static_cast<int>(std::floor(ratio));
  double r = p.delay - m * info.period;
  // Snap r near 0 or near T to the closest exact multiple.
  if (r < 0.0) { --m; r = p.delay - m * info.period; }
  const double snap = tol_case * p.delay;
  if (r <= snap) {
    info.kind = DelayCase::CaseI;
    info.periods_in_delay = m;
    info.remainder = 0.0;
  } else if (info.period - r <= snap) {
    info.kind = DelayCase::CaseI;
    info.periods_in_delay = m + 1;
    info.remainder = 0.0;
  } else {
    info.kind = DelayCase::CaseII;
    info.periods_in_delay = m;
    info.remainder = r;
  }
  return info;
}

Vec history_eval(const OscDDEProblem& p, double t) {
  const double slack = 1e-12 * std::max(1.0, p.delay);
  if (t < -p.delay - slack || t > slack)
    throw std::out_of_range("history requested outside [-tau, 0]: t = " + std::to_string(t));
  Vec out(p.dim);
  p.history(t, out);
  return out;
}

double segment_phase_offset(const OscDDEProblem& p, int ell) {
  if (ell < 1 || ell > p.segments) throw std::invalid_argument("segment index out of range");
  const double x = p.omega * ((ell - 1) * p.delay);
  return std::remainder(x, 2.0 * std::numbers::pi);
}

}  // namespace samdde
