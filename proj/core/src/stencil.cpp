#include "samdde/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace samdde {

Stencil derive_weights(std::vector<int> offsets) {
  std::sort(offsets.begin(), offsets.end());
  const int n = static_cast<int>(offsets.size());
  if (n < 2) throw std::invalid_argument("stencil needs at least 2 offsets");
  for (int i = 1; i < n; ++i)
    if (offsets[i] == offsets[i - 1])
      throw std::invalid_argument("stencil offsets must be distinct");

  // Moment system: sum_i w_i k_i^m = delta_{m,1}, m = 0..n-1.
  std::vector<std::vector<long double>> a(n, std::vector<long double>(n + 1, 0.0L));
  for (int m = 0; m < n; ++m) {
    for (int i = 0; i < n; ++i) {
      long double p = 1.0L;
      for (int q = 0; q < m; ++q) p *= offsets[i];
      a[m][i] = p;
    }
    a[m][n] = (m == 1) ? 1.0L : 0.0L;
  }
  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(static_cast<double>(a[r][col])) >
          std::fabs(static_cast<double>(a[piv][col])))
        piv = r;
    std::swap(a[col], a[piv]);
    for (int r = col + 1; r < n; ++r) {
      const long double f = a[r][col] / a[col][col];
      for (int c2 = col; c2 <= n; ++c2) a[r][c2] -= f * a[col][c2];
    }
  }
  std::vector<long double> w(n);
  for (int r = n - 1; r >= 0; --r) {
    long double s = a[r][n];
    for (int c2 = r + 1; c2 < n; ++c2) s -= a[r][c2] * w[c2];
    w[r] = s / a[r][r];
  }

  Stencil st;
  st.offsets = std::move(offsets);
  st.weights.resize(n);
  for (int i = 0; i < n; ++i) st.weights[i] = static_cast<double>(w[i]);
  st.order = n - 1;
  return st;
}

SamMethod parse_method(const std::string& name) {
  if (name == "sam-rk2") return SamMethod::RK2;
  if (name == "sam-rk3") return SamMethod::RK3;
  if (name == "sam-rk4") return SamMethod::RK4;
  throw std::invalid_argument("unknown method '" + name +
                              "' (expected sam-rk2, sam-rk3 or sam-rk4)");
}

const char* method_name(SamMethod m) {
  switch (m) {
    case SamMethod::RK2: return "sam-rk2";
    case SamMethod::RK3: return "sam-rk3";
    case SamMethod::RK4: return "sam-rk4";
  }
  return "?";
}

StencilSchedule builtin_schedule(SamMethod method) {
  StencilSchedule sch;
  switch (method) {
    case SamMethod::RK2:
      sch.interior = derive_weights({-1, 1});
      sch.at_start = derive_weights({0, 1});
      break;
    case SamMethod::RK3:
      sch.interior = derive_weights({-2, -1, 0, 1});
      sch.at_start = derive_weights({0, 1, 2, 3});
      break;
    case SamMethod::RK4:
      sch.interior = derive_weights({-2, -1, 1, 2});
      sch.at_start = derive_weights({0, 1, 2, 3, 4});
      sch.at_end = derive_weights({-4, -3, -2, -1, 0});
      break;
  }
  return sch;
}

Vec stencil_apply(const Stencil& st, const std::vector<Vec>& values, double period) {
  if (values.size() != st.offsets.size())
    throw std::invalid_argument("stencil_apply: value count does not match offsets");
  if (!(period > 0.0)) throw std::invalid_argument("stencil_apply: period must be > 0");
  Vec out(values.front().size(), 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) axpy(st.weights[i], values[i], out);
  for (double& x : out) x /= period;
  return out;
}

}  // namespace samdde
