#include <doctest.h>

#include <cmath>
#include <numbers>

#include "samdde/problems.hpp"

using namespace samdde;

TEST_CASE("toggle right-hand side vanishes at the rest history") {
  const OscDDEProblem p = toggle_problem(100.0);
  const Vec x = {0.5, 2.0};
  Vec out(2);
  // alpha/(1+4) - 0.5 + 0 + 0 = 0 and alpha/(1+0.25) - 2 = 0
  p.rhs(x, x, 0.0, 0.0, p.omega, out);
  CHECK(out[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(out[1] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("toggle right-hand side is 2pi-periodic in the phase") {
  const OscDDEProblem p = toggle_problem(100.0);
  const Vec x = {0.7, 1.1}, xd = {0.4, 1.9};
  Vec a(2), b(2);
  p.rhs(x, xd, 0.3, 1.234, p.omega, a);
  p.rhs(x, xd, 0.3, 1.234 + 2.0 * std::numbers::pi, p.omega, b);
  CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-14));
  CHECK(a[1] == doctest::Approx(b[1]).epsilon(1e-14));
}

TEST_CASE("toggle without forcing is autonomous in slow time and phase") {
  ToggleParams params;
  params.A = 0.0;
  params.B = 0.0;
  const OscDDEProblem p = toggle_problem(100.0, params);
  const Vec x = {0.7, 1.1}, xd = {0.4, 1.9};
  Vec a(2), b(2);
  p.rhs(x, xd, 0.1, 0.2, p.omega, a);
  p.rhs(x, xd, 1.7, 2.9, p.omega, b);
  CHECK(a[0] == b[0]);
  CHECK(a[1] == b[1]);
}

TEST_CASE("scaled variant carries an Omega-proportional fast term") {
  const double omega = 100.0;
  const OscDDEProblem scaled = scaled_toggle_problem(omega);
  ToggleParams off;
  off.B_hat = 0.0;
  const OscDDEProblem base = scaled_toggle_problem(omega, off);
  const Vec x = {0.5, 2.0};
  Vec a(2), b(2);
  const double phase = std::numbers::pi / 2.0;  // sin(phase) = 1
  scaled.rhs(x, x, 0.0, phase, omega, a);
  base.rhs(x, x, 0.0, phase, omega, b);
  CHECK(a[0] - b[0] == doctest::Approx(10.0).epsilon(1e-13));  // B_hat * Omega
  CHECK(a[1] == b[1]);
}

TEST_CASE("toggle history is the constant rest state") {
  const OscDDEProblem p = toggle_problem(16.0 * std::numbers::pi);
  for (double t : {-0.5, -0.25, 0.0}) {
    Vec v(2);
    p.history(t, v);
    CHECK(v[0] == 0.5);
    CHECK(v[1] == 2.0);
  }
}

TEST_CASE("non-integer exponent is rejected") {
  ToggleParams params;
  params.beta = 2.5;
  CHECK_THROWS_AS(toggle_problem(100.0, params), std::invalid_argument);
}

TEST_CASE("synthetic quadrature problem evaluates the trig polynomial") {
  // Lambda(s) = cos(s): dy/dt = Omega cos(phase) + decay * y on (Re, Im)
  const double omega = 80.0;
  const OscDDEProblem p = synthetic_quadrature_problem(
      {{1, {0.5, 0.0}}, {-1, {0.5, 0.0}}}, -1.0, omega);
  Vec out(2);
  const Vec y = {0.3, 0.0};
  p.rhs(y, y, 0.0, 0.0, omega, out);
  CHECK(out[0] == doctest::Approx(omega * 1.0 - 0.3).epsilon(1e-13));
  CHECK(out[1] == doctest::Approx(0.0).epsilon(1e-13));
  p.rhs(y, y, 0.0, std::numbers::pi / 2.0, omega, out);
  CHECK(out[0] == doctest::Approx(-0.3).epsilon(1e-10));
}
