#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "samdde/vec.hpp"

namespace samdde {

/// Coefficients of an explicit Runge-Kutta method together with its
/// classical order. A is strictly lower triangular; sum(b) = 1.
struct ButcherTableau {
  int stages = 0;
  std::vector<double> abscissas;            // c_j
  std::vector<std::vector<double>> coeffs;  // A, strictly lower triangular
  std::vector<double> weights;              // b_j
  int order = 0;
};

/// Throws std::invalid_argument if the tableau is malformed (wrong sizes,
/// upper-triangular entries, weights not summing to 1).
void validate_tableau(const ButcherTableau& tab);

/// Largest residual among the order conditions up to `order`.
/// Supports order <= 4 (all eight classical conditions).
double max_order_condition_residual(const ButcherTableau& tab, int order);

ButcherTableau rk2_midpoint();
ButcherTableau rk3_heun();
ButcherTableau rk4_classical();

/// Internal stage times and stage values Y_j recorded during one step.
struct StageRecord {
  std::vector<double> stage_times;
  std::vector<Vec> stage_states;
};

/// One explicit RK step from (t, y) with step dt (dt < 0 integrates
/// backward). `rhs` is called as rhs(stage_time, stage_state) -> Vec,
/// once per stage in increasing stage order.
template <class Rhs>
Vec rk_step(const ButcherTableau& tab, Rhs&& rhs, double t, const Vec& y,
            double dt, StageRecord* record = nullptr) {
  const int s = tab.stages;
  std::vector<Vec> k(s);
  for (int j = 0; j < s; ++j) {
    Vec stage = y;
    for (int q = 0; q < j; ++q) {
      const double a = tab.coeffs[j][q];
      if (a != 0.0) axpy(dt * a, k[q], stage);
    }
    const double tj = t + tab.abscissas[j] * dt;
    try {
      k[j] = rhs(tj, stage);
    } catch (const std::exception& e) {
      throw std::runtime_error("rhs evaluation failed at stage " +
                               std::to_string(j) + ": " + e.what());
    }
    if (record) {
      record->stage_times.push_back(tj);
      record->stage_states.push_back(std::move(stage));
    }
  }
  Vec out = y;
  for (int j = 0; j < s; ++j) {
    const double b = tab.weights[j];
    if (b != 0.0) axpy(dt * b, k[j], out);
  }
  return out;
}

/// One Fourier mode amp * exp(i k s) of a trigonometric polynomial.
struct TrigMode {
  int wavenumber = 0;  // nonzero
  std::complex<double> amplitude{0.0, 0.0};
};

/// Integrates dy/ds = sum_k amp_k exp(i k s) over one signed period
/// (direction = +1 or -1) with steps_per_period equal steps and returns
/// |y_end - y_0|. The true increment over a whole period is zero, so the
/// return value is the endpoint defect. A nonzero value for aliased modes
/// (k multiple of steps_per_period) is a legitimate result, not an error.
double quadrature_exactness_defect(const ButcherTableau& tab,
                                   const std::vector<TrigMode>& modes,
                                   int steps_per_period, int direction);

/// |2 pi sum_j b_j exp(i k c_j ds)| with ds = 2 pi / steps_per_period:
/// the exact endpoint defect of the aliased mode exp(i k s).
double alias_defect_closed_form(const ButcherTableau& tab, int wavenumber,
                                int steps_per_period);

}  // namespace samdde
