#pragma once

#include "samdde/problem.hpp"
#include "samdde/tableau.hpp"

namespace samdde {

/// Constants of the forced delayed toggle-switch benchmark. B is the fast
/// forcing amplitude of the plain variant; B_hat the Omega-scaled one.
struct ToggleParams {
  double alpha = 2.5;
  double beta = 2.0;  // must be a positive integer
  double A = 0.1;
  double omega_slow = 0.1;
  double B = 4.0;
  double B_hat = 0.1;
  double tau = 0.5;
};

/// Two-gene toggle switch with slow forcing A sin(w t) and fast forcing
/// B sin(Omega t); history (0.5, 2.0). `segments` delays of horizon.
OscDDEProblem toggle_problem(double omega, const ToggleParams& params = {},
                             int segments = 4);

/// Variant with fast forcing B_hat * Omega * sin(Omega t): oscillation
/// amplitude stays O(1) as Omega grows.
OscDDEProblem scaled_toggle_problem(double omega, const ToggleParams& params = {},
                                    int segments = 4);

/// dy/dt = Omega * Lambda(Omega t) + decay_coeff * y with Lambda a
/// trigonometric polynomial, realized on the 2-vector (Re y, Im y); no
/// delay coupling. Used for micro-error scaling studies.
OscDDEProblem synthetic_quadrature_problem(const std::vector<TrigMode>& modes,
                                           double decay_coeff, double omega,
                                           double delay = 0.5, int segments = 1);

}  // namespace samdde
