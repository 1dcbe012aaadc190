#include <doctest.h>

#include <cmath>
#include <numbers>

#include "samdde/problem.hpp"
#include "samdde/problems.hpp"

using namespace samdde;

TEST_CASE("problem validation") {
  OscDDEProblem p = toggle_problem(16.0 * std::numbers::pi);
  CHECK_NOTHROW(validate_problem(p));
  p.horizon = 1.9;  // not an integer multiple of the delay
  CHECK_THROWS_AS(validate_problem(p), std::invalid_argument);
  p = toggle_problem(16.0 * std::numbers::pi);
  p.dim = 0;
  CHECK_THROWS_AS(validate_problem(p), std::invalid_argument);
}

TEST_CASE("delay-period classification") {
  // tau = 0.5, Omega = 16 pi: T = 1/8, exactly four periods per delay
  {
    const CaseInfo info = classify_case(toggle_problem(16.0 * std::numbers::pi));
    CHECK(info.kind == DelayCase::CaseI);
    CHECK(info.periods_in_delay == 4);
    CHECK(info.remainder == 0.0);
    CHECK(info.period == doctest::Approx(0.125).epsilon(1e-15));
  }
  // tau = 0.5, Omega = 50: T = 2 pi / 50, M = 3, r = 0.5 - 6 pi / 50
  {
    const CaseInfo info = classify_case(toggle_problem(50.0));
    CHECK(info.kind == DelayCase::CaseII);
    CHECK(info.periods_in_delay == 3);
    CHECK(info.remainder ==
          doctest::Approx(0.5 - 6.0 * std::numbers::pi / 50.0).epsilon(1e-13));
  }
  // tau = T exactly: M = 1, r = 0, still Case I
  {
    OscDDEProblem p = toggle_problem(2.0 * std::numbers::pi);
    p.delay = 1.0;
    p.horizon = 4.0;
    const CaseInfo info = classify_case(p);
    CHECK(info.kind == DelayCase::CaseI);
    CHECK(info.periods_in_delay == 1);
    CHECK(info.remainder == 0.0);
  }
  // tau < T: the averaging premise fails
  {
    OscDDEProblem p = toggle_problem(2.0 * std::numbers::pi);
    p.delay = 0.5;
    p.horizon = 2.0;
    CHECK_THROWS_AS(classify_case(p), std::invalid_argument);
  }
  // a ratio just below an integer snaps up
  {
    OscDDEProblem p = toggle_problem(16.0 * std::numbers::pi);
    p.delay = 0.5 * (1.0 - 1e-12);
    p.horizon = 4.0 * p.delay;
    const CaseInfo info = classify_case(p);
    CHECK(info.kind == DelayCase::CaseI);
    CHECK(info.periods_in_delay == 4);
  }
  // tolerance outside (0, 1e-6] is rejected
  CHECK_THROWS_AS(classify_case(toggle_problem(50.0), 1e-3), std::invalid_argument);
}

TEST_CASE("history evaluation and boundary slack") {
  const OscDDEProblem p = toggle_problem(16.0 * std::numbers::pi);
  const Vec v = history_eval(p, -0.25);
  CHECK(v[0] == 0.5);
  CHECK(v[1] == 2.0);
  CHECK_NOTHROW(history_eval(p, -p.delay - 1e-15));
  CHECK_THROWS_AS(history_eval(p, -2.0 * p.delay), std::out_of_range);
  CHECK_THROWS_AS(history_eval(p, 0.5), std::out_of_range);
}

TEST_CASE("segment phase offsets") {
  // Case I with Omega a binary-exact multiple of pi/tau: offsets exactly 0
  const OscDDEProblem p1 = toggle_problem(16.0 * std::numbers::pi);
  for (int ell = 1; ell <= 4; ++ell) CHECK(segment_phase_offset(p1, ell) == 0.0);

  // Case II: offset of segment ell is Omega (ell-1) tau reduced mod 2 pi
  const OscDDEProblem p2 = toggle_problem(50.0);
  CHECK(segment_phase_offset(p2, 1) == 0.0);
  const double expect = std::remainder(50.0 * 0.5, 2.0 * std::numbers::pi);
  CHECK(segment_phase_offset(p2, 2) == expect);
  CHECK(std::fabs(segment_phase_offset(p2, 3)) <= std::numbers::pi);
}
