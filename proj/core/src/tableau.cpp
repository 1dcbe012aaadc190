#include "samdde/tableau.hpp"

#include <cmath>
#include <numbers>

namespace samdde {

void validate_tableau(const ButcherTableau& tab) {
  const int s = tab.stages;
  if (s <= 0 || tab.order <= 0) throw std::invalid_argument("tableau: nonpositive stage count or order");
  if (static_cast<int>(tab.abscissas.size()) != s ||
      static_cast<int>(tab.weights.size()) != s ||
      static_cast<int>(tab.coeffs.size()) != s)
    throw std::invalid_argument("tableau: size mismatch");
  double bsum = 0.0;
  for (int j = 0; j < s; ++j) {
    if (static_cast<int>(tab.coeffs[j].size()) != s)
      throw std::invalid_argument("tableau: A row size mismatch");
    for (int q = j; q < s; ++q)
      if (tab.coeffs[j][q] != 0.0)
        throw std::invalid_argument("tableau: A not strictly lower triangular");
    bsum += tab.weights[j];
  }
  if (std::fabs(bsum - 1.0) > 1e-14)
    throw std::invalid_argument("tableau: weights do not sum to 1");
}

double max_order_condition_residual(const ButcherTableau& tab, int order) {
  const int s = tab.stages;
  const auto& b = tab.weights;
  const auto& c = tab.abscissas;
  const auto& a = tab.coeffs;
  double res = 0.0;
  auto track = [&](double value, double target) {
    res = std::max(res, std::fabs(value - target));
  };
  // order 1
  double s1 = 0.0;
  for (int j = 0; j < s; ++j) s1 += b[j];
  track(s1, 1.0);
  if (order >= 2) {
    double bc = 0.0;
    for (int j = 0; j < s; ++j) bc += b[j] * c[j];
    track(bc, 0.5);
  }
  if (order >= 3) {
    double bc2 = 0.0, bac = 0.0;
    for (int j = 0; j < s; ++j) {
      bc2 += b[j] * c[j] * c[j];
      for (int q = 0; q < s; ++q) bac += b[j] * a[j][q] * c[q];
    }
    track(bc2, 1.0 / 3.0);
    track(bac, 1.0 / 6.0);
  }
  if (order >= 4) {
    double bc3 = 0.0, bcac = 0.0, bac2 = 0.0, baac = 0.0;
    for (int j = 0; j < s; ++j) {
      bc3 += b[j] * c[j] * c[j] * c[j];
      for (int q = 0; q < s; ++q) {
        bcac += b[j] * c[j] * a[j][q] * c[q];
        bac2 += b[j] * a[j][q] * c[q] * c[q];
        for (int l = 0; l < s; ++l) baac += b[j] * a[j][q] * a[q][l] * c[l];
      }
    }
    track(bc3, 0.25);
    track(bcac, 0.125);
    track(bac2, 1.0 / 12.0);
    track(baac, 1.0 / 24.0);
  }
  if (order >= 5) throw std::invalid_argument("order conditions beyond 4 not implemented");
  return res;
}

ButcherTableau rk2_midpoint() {
  ButcherTableau tab;
  tab.stages = 2;
  tab.abscissas = {0.0, 0.5};
  tab.coeffs = {{0.0, 0.0}, {0.5, 0.0}};
  tab.weights = {0.0, 1.0};
  tab.order = 2;
  validate_tableau(tab);
  return tab;
}

ButcherTableau rk3_heun() {
  ButcherTableau tab;
  tab.stages = 3;
  tab.abscissas = {0.0, 1.0 / 3.0, 2.0 / 3.0};
  tab.coeffs = {{0.0, 0.0, 0.0},
                {1.0 / 3.0, 0.0, 0.0},
                {0.0, 2.0 / 3.0, 0.0}};
  tab.weights = {0.25, 0.0, 0.75};
  tab.order = 3;
  validate_tableau(tab);
  return tab;
}

ButcherTableau rk4_classical() {
  ButcherTableau tab;
  tab.stages = 4;
  tab.abscissas = {0.0, 0.5, 0.5, 1.0};
  tab.coeffs = {{0.0, 0.0, 0.0, 0.0},
                {0.5, 0.0, 0.0, 0.0},
                {0.0, 0.5, 0.0, 0.0},
                {0.0, 0.0, 1.0, 0.0}};
  tab.weights = {1.0 / 6.0, 2.0 / 6.0, 2.0 / 6.0, 1.0 / 6.0};
  tab.order = 4;
  validate_tableau(tab);
  return tab;
}

double quadrature_exactness_defect(const ButcherTableau& tab,
                                   const std::vector<TrigMode>& modes,
                                   int steps_per_period, int direction) {
  if (steps_per_period < 1) throw std::invalid_argument("steps_per_period must be >= 1");
  if (direction != 1 && direction != -1) throw std::invalid_argument("direction must be +-1");
  const double ds = direction * 2.0 * std::numbers::pi / steps_per_period;
  // Complex state realized as the 2-vector (Re y, Im y).
  auto rhs = [&](double s, const Vec&) {
    std::complex<double> v{0.0, 0.0};
    for (const auto& m : modes)
      v += m.amplitude * std::exp(std::complex<double>(0.0, m.wavenumber * s));
    return Vec{v.real(), v.imag()};
  };
  Vec y{0.0, 0.0};
  double s = 0.0;
  for (int m = 0; m < steps_per_period; ++m) {
    y = rk_step(tab, rhs, s, y, ds);
    s = (m + 1) * ds;
  }
  return std::hypot(y[0], y[1]);
}

double alias_defect_closed_form(const ButcherTableau& tab, int wavenumber,
                                int steps_per_period) {
  const double ds = 2.0 * std::numbers::pi / steps_per_period;
  std::complex<double> sum{0.0, 0.0};
  for (int j = 0; j < tab.stages; ++j)
    sum += tab.weights[j] *
           std::exp(std::complex<double>(0.0, wavenumber * tab.abscissas[j] * ds));
  return 2.0 * std::numbers::pi * std::abs(sum);
}

}  // namespace samdde
