#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "samdde/stencil.hpp"

using namespace samdde;

namespace {

void check_weights(const std::vector<int>& offsets,
                   const std::vector<double>& expect) {
  const Stencil st = derive_weights(offsets);
  REQUIRE(st.weights.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i)
    CHECK(st.weights[i] == doctest::Approx(expect[i]).epsilon(1e-13));
  CHECK(st.order == static_cast<int>(offsets.size()) - 1);
}

}  // namespace

TEST_CASE("tabulated differentiation weights") {
  check_weights({0, 1}, {-1.0, 1.0});
  check_weights({-1, 1}, {-0.5, 0.5});
  check_weights({-2, -1, 0, 1}, {1.0 / 6, -1.0, 0.5, 1.0 / 3});
  check_weights({-2, -1, 1, 2}, {1.0 / 12, -2.0 / 3, 2.0 / 3, -1.0 / 12});
  check_weights({0, 1, 2, 3}, {-11.0 / 6, 3.0, -1.5, 1.0 / 3});
  check_weights({0, 1, 2, 3, 4}, {-25.0 / 12, 4.0, -3.0, 4.0 / 3, -0.25});
}

TEST_CASE("moment conditions of random stencils") {
  std::mt19937 gen(20240229u);
  std::uniform_int_distribution<int> pick(-10, 10);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> size(2, 8);
    std::set<int> chosen;
    const int n = size(gen);
    while (static_cast<int>(chosen.size()) < n) chosen.insert(pick(gen));
    std::vector<int> offsets(chosen.begin(), chosen.end());
    const Stencil st = derive_weights(offsets);
    for (int m = 0; m < n; ++m) {
      long double s = 0.0L, scale = 0.0L;
      for (int i = 0; i < n; ++i) {
        const long double term = st.weights[i] * std::pow((long double)offsets[i], m);
        s += term;
        scale += std::fabs((double)term);
      }
      const double target = (m == 1) ? 1.0 : 0.0;
      CHECK(std::fabs((double)(s - target)) <=
            1e-13 * std::max(1.0, (double)scale));
    }
  }
}

TEST_CASE("derive_weights rejects bad node sets") {
  CHECK_THROWS_AS(derive_weights({3}), std::invalid_argument);
  CHECK_THROWS_AS(derive_weights({0, 0, 1}), std::invalid_argument);
}

TEST_CASE("built-in schedules") {
  const StencilSchedule rk2 = builtin_schedule(SamMethod::RK2);
  CHECK(rk2.interior.offsets == std::vector<int>{-1, 1});
  CHECK(rk2.at_start.offsets == std::vector<int>{0, 1});
  CHECK(!rk2.at_end.has_value());

  const StencilSchedule rk3 = builtin_schedule(SamMethod::RK3);
  CHECK(rk3.interior.offsets == std::vector<int>{-2, -1, 0, 1});
  CHECK(rk3.at_start.offsets == std::vector<int>{0, 1, 2, 3});
  // the last abscissa of the third-order macro method is 2/3 < 1, so no
  // stage ever sits at the segment endpoint
  CHECK(!rk3.at_end.has_value());

  const StencilSchedule rk4 = builtin_schedule(SamMethod::RK4);
  CHECK(rk4.interior.offsets == std::vector<int>{-2, -1, 1, 2});
  CHECK(rk4.at_start.offsets == std::vector<int>{0, 1, 2, 3, 4});
  REQUIRE(rk4.at_end.has_value());
  CHECK(rk4.at_end->offsets == std::vector<int>{-4, -3, -2, -1, 0});
}

TEST_CASE("method name round trips") {
  CHECK(parse_method("sam-rk2") == SamMethod::RK2);
  CHECK(parse_method("sam-rk3") == SamMethod::RK3);
  CHECK(parse_method("sam-rk4") == SamMethod::RK4);
  CHECK(std::string(method_name(SamMethod::RK3)) == "sam-rk3");
  CHECK_THROWS_AS(parse_method("sam-rk5"), std::invalid_argument);
}

TEST_CASE("stencil application") {
  const double period = 0.125;
  const Stencil cd4 = derive_weights({-2, -1, 1, 2});
  const Vec w = {1.7, -0.3};

  // all values equal: sum(w) = 0 kills the constant
  std::vector<Vec> values(4, w);
  Vec out = stencil_apply(cd4, values, period);
  CHECK(std::fabs(out[0]) <= 1e-14);
  CHECK(std::fabs(out[1]) <= 1e-14);

  // linear data k*T*e: sum(w k) = 1 recovers the slope e
  for (int i = 0; i < 4; ++i) {
    const double kt = cd4.offsets[i] * period;
    values[i] = {kt, 2.0 * kt};
  }
  out = stencil_apply(cd4, values, period);
  CHECK(out[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(out[1] == doctest::Approx(2.0).epsilon(1e-13));

  // cubic data (k*T)^3: annihilated by the order-3 rule
  for (int i = 0; i < 4; ++i) {
    const double kt = cd4.offsets[i] * period;
    values[i] = {kt * kt * kt};
    values[i].resize(1);
  }
  std::vector<Vec> cubic(4);
  for (int i = 0; i < 4; ++i) {
    const double kt = cd4.offsets[i] * period;
    cubic[i] = {kt * kt * kt};
  }
  out = stencil_apply(cd4, cubic, period);
  CHECK(std::fabs(out[0]) <= 1e-13);
}
