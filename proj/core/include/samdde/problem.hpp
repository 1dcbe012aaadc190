#pragma once

#include <functional>
#include <stdexcept>

#include "samdde/vec.hpp"

namespace samdde {

/// The oscillatory constant-delay problem
///   dx/dt = f(x(t), x(t - tau), t, Omega t; Omega),  0 <= t <= horizon,
///   x(t) = history(t),                               -tau <= t <= 0,
/// with f 2pi-periodic in the phase argument and horizon = segments * delay.
/// rhs callables must be pure; they are shared and re-evaluated freely.
struct OscDDEProblem {
  int dim = 0;
  /// rhs(x, x_delayed, t_slow, phase, omega, out): writes f into `out`.
  /// The phase argument is supplied by the caller (engine or oracle); it is
  /// NOT derived from t_slow inside the problem.
  std::function<void(const Vec&, const Vec&, double, double, double, Vec&)> rhs;
  double delay = 0.0;   // tau > 0
  double omega = 0.0;   // Omega >> 1
  std::function<void(double, Vec&)> history;  // phi on [-tau, 0]
  double horizon = 0.0;  // L * tau
  int segments = 0;      // L

  double period() const { return 2.0 * 3.141592653589793238462643383279502884 / omega; }
};

/// Checks the structural invariants (positive sizes, horizon an exact
/// integer multiple of delay). Throws std::invalid_argument on violation.
void validate_problem(const OscDDEProblem& p);

enum class DelayCase { CaseI, CaseII };

struct CaseInfo {
  DelayCase kind = DelayCase::CaseI;
  int periods_in_delay = 0;  // M (snapped for Case I)
  double remainder = 0.0;    // r = tau - M*T, 0 for Case I
  double period = 0.0;       // T = 2 pi / Omega
};

/// Classifies the delay/period relation. tol_case is relative to tau and
/// snaps near-integer ratios in both directions (r close to 0 or to T).
/// Rejects tau < T: the averaging premise fails for delays shorter than
/// one fast period.
CaseInfo classify_case(const OscDDEProblem& p, double tol_case = 1e-9);

/// phi(t) for t in [-tau, 0] (small slack at both ends).
Vec history_eval(const OscDDEProblem& p, double t);

/// Omega*(ell-1)*tau reduced mod 2pi (exact IEEE remainder, so Case I
/// offsets come out as exact zeros when Omega is a binary-exact multiple
/// of pi/tau). ell is 1-based.
double segment_phase_offset(const OscDDEProblem& p, int ell);

}  // namespace samdde
