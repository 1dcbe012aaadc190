#pragma once

#include <utility>
#include <vector>

#include "samdde/engine.hpp"
#include "samdde/problem.hpp"

namespace samdde {

/// Dense fixed-step RK4 method-of-steps solution: per segment, grid values
/// at j*h_ref (j = 0..K, h_ref = tau/K) and every internal stage value.
/// Exact node alignment with the SAM macro grid (K a multiple of N)
/// removes interpolation error from all comparisons.
struct ReferenceSolution {
  int steps_per_segment = 0;  // K
  double step = 0.0;          // h_ref = tau/K
  int dim = 0;
  int segments = 0;
  int stages = 4;  // classical RK4
  std::vector<std::vector<double>> grid;    // [ell-1], flat (K+1)*dim
  std::vector<std::vector<double>> stage_values;  // [ell-1], flat K*stages*dim
  unsigned long long rhs_evaluations = 0;

  const double* node(int ell, int j) const { return &grid[ell - 1][j * dim]; }
  Vec node_vec(int ell, int j) const {
    const double* p = node(ell, j);
    return Vec(p, p + dim);
  }
};

/// Brute-force oracle: integrates the segmented system sequentially with
/// classical RK4 and step tau/K; delayed arguments are the previous
/// segment's stage values at the identical (step, stage) pair, so the run
/// equals one RK4 pass over the stacked lower-bidiagonal system. The phase
/// argument here is the reduced absolute phase Omega*(t + (ell-1)*tau):
/// the true oscillatory system is being solved.
/// K >= 2; resolving the oscillation needs h_ref <= T/10 (stderr warning
/// otherwise).
ReferenceSolution reference_solve(const OscDDEProblem& p, int steps_per_segment);

enum class ErrorMetric { MaxStrobo, Endpoint };

struct ErrorReport {
  ErrorMetric metric = ErrorMetric::MaxStrobo;
  int component = 0;
  double value = 0.0;
  int compared_points = 0;
  double oracle_step = 0.0;
};

/// Maximum |X - x_ref| in `component` over all macro nodes whose absolute
/// time is stroboscopic (|t/T - round(t/T)| <= 1e-9). Requires every
/// compared node to lie exactly on the reference grid (K multiple of N).
ErrorReport max_strobo_error(const StroboscopicSolution& sol,
                             const ReferenceSolution& ref, int component);

/// |X - x_ref| in `component` at t_max only (Case II: the tail endpoint).
ErrorReport endpoint_error(const StroboscopicSolution& sol,
                           const ReferenceSolution& ref, int component);

/// Least-squares slope of log(error) against log(x) for points (x, error).
/// Needs >= 3 points with positive errors.
double observed_order(const std::vector<std::pair<double, double>>& points);

}  // namespace samdde
