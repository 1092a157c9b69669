#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "msd/error.hpp"

namespace msd::detail {

inline constexpr double kTinyPivot = 1e-300;

/// Tridiagonal elimination without pivoting. sub[i] couples row i+1 to
/// column i, super[i] couples row i to column i+1.
inline std::vector<double> thomas_solve(std::span<const double> sub, std::span<const double> diag,
                                        std::span<const double> super, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (rhs.size() != n || (n > 0 && (sub.size() != n - 1 || super.size() != n - 1))) {
    throw ValidationError("tridiagonal solve: inconsistent sizes");
  }
  std::vector<double> c(n), x(n);
  double pivot = n > 0 ? diag[0] : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) pivot = diag[i] - sub[i - 1] * c[i - 1];
    if (!(std::abs(pivot) >= kTinyPivot)) {
      throw SolverError("tridiagonal solve: zero pivot at row " + std::to_string(i));
    }
    c[i] = i + 1 < n ? super[i] / pivot : 0.0;
    x[i] = (rhs[i] - (i > 0 ? sub[i - 1] * x[i - 1] : 0.0)) / pivot;
  }
  for (std::size_t i = n; i-- > 1;) x[i - 1] -= c[i - 1] * x[i];
  return x;
}

}  // namespace msd::detail
