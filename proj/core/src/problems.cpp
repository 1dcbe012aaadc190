#include "samdde/problems.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace samdde {

namespace {

int checked_int_beta(double beta) {
  const int b = static_cast<int>(beta);
  if (!(beta > 0.0) || b != beta)
    throw std::invalid_argument("toggle: beta must be a positive integer");
  return b;
}

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

OscDDEProblem toggle_base(double omega, const ToggleParams& params, int segments,
                          bool scaled) {
  const int beta = checked_int_beta(params.beta);
  OscDDEProblem p;
  p.dim = 2;
  p.delay = params.tau;
  p.omega = omega;
  p.segments = segments;
  p.horizon = segments * params.tau;
  p.history = [](double, Vec& out) { out[0] = 0.5; out[1] = 2.0; };
  const double alpha = params.alpha;
  const double slow_amp = params.A;
  const double slow_freq = params.omega_slow;
  p.rhs = [alpha, beta, slow_amp, slow_freq, scaled,
           fast_amp = scaled ? params.B_hat : params.B](
              const Vec& x, const Vec& x_del, double t_slow, double phase,
              double om, Vec& out) {
    const double fast = scaled ? fast_amp * om * std::sin(phase)
                               : fast_amp * std::sin(phase);
    out[0] = alpha / (1.0 + ipow(x[1], beta)) - x_del[0] +
             slow_amp * std::sin(slow_freq * t_slow) + fast;
    out[1] = alpha / (1.0 + ipow(x[0], beta)) - x_del[1];
  };
  validate_problem(p);
  return p;
}

}  // namespace

OscDDEProblem toggle_problem(double omega, const ToggleParams& params, int segments) {
  return toggle_base(omega, params, segments, /*scaled=*/false);
}

OscDDEProblem scaled_toggle_problem(double omega, const ToggleParams& params,
                                    int segments) {
  return toggle_base(omega, params, segments, /*scaled=*/true);
}

OscDDEProblem synthetic_quadrature_problem(const std::vector<TrigMode>& modes,
                                           double decay_coeff, double omega,
                                           double delay, int segments) {
  OscDDEProblem p;
  p.dim = 2;
  p.delay = delay;
  p.omega = omega;
  p.segments = segments;
  p.horizon = segments * delay;
  p.history = [](double, Vec& out) { out[0] = 1.0; out[1] = 0.0; };
  p.rhs = [modes, decay_coeff](const Vec& y, const Vec&, double, double phase,
                               double om, Vec& out) {
    std::complex<double> lambda{0.0, 0.0};
    for (const auto& m : modes)
      lambda += m.amplitude * std::exp(std::complex<double>(0.0, m.wavenumber * phase));
    out[0] = om * lambda.real() + decay_coeff * y[0];
    out[1] = om * lambda.imag() + decay_coeff * y[1];
  };
  validate_problem(p);
  return p;
}

}  // namespace samdde
