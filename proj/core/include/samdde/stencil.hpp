#pragma once

#include <optional>
#include <string>
#include <vector>

#include "samdde/vec.hpp"

namespace samdde {

/// First-derivative finite-difference formula on nodes k*T, k integer.
/// The weights satisfy sum(w) = 0, sum(w k) = 1 and sum(w k^m) = 0 for
/// 2 <= m <= order, so that apply() divided by T approximates d/dt.
struct Stencil {
  std::vector<int> offsets;  // sorted ascending, distinct
  std::vector<double> weights;
  int order = 0;  // error O(Omega^{-order})

  int min_offset() const { return offsets.front(); }
  int max_offset() const { return offsets.back(); }
};

/// Solves the Vandermonde moment system for the given integer offsets
/// (n >= 2, distinct). Elimination is carried out in long double with
/// partial pivoting; order = n - 1.
Stencil derive_weights(std::vector<int> offsets);

/// Which stencil to use depending on where the evaluation window sits
/// relative to the segment [0, span]: `interior` whenever its window fits,
/// `at_start` (forward only) when the window would cross below 0,
/// `at_end` (backward only, optional) when it would cross above span.
struct StencilSchedule {
  Stencil interior;
  Stencil at_start;
  std::optional<Stencil> at_end;
};

enum class SamMethod { RK2, RK3, RK4 };

SamMethod parse_method(const std::string& name);  // "sam-rk2" etc.
const char* method_name(SamMethod m);

StencilSchedule builtin_schedule(SamMethod method);

/// (1/T) * sum_k w_k values_k. `values` must be aligned with st.offsets.
Vec stencil_apply(const Stencil& st, const std::vector<Vec>& values, double period);

}  // namespace samdde
