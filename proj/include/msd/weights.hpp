#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "msd/exponent.hpp"

namespace msd {

/// Lower-triangular table of memory weights b[n][k], 1 <= k <= n <= N, for
/// the uniform step tau = T / N.
class WeightTable {
 public:
  WeightTable() = default;
  WeightTable(int n_steps, double tau);

  int n_steps() const noexcept { return n_steps_; }
  double tau() const noexcept { return tau_; }

  /// Throws ValidationError outside 1 <= k <= n <= N.
  double at(int n, int k) const;
  double& at(int n, int k);

  /// Entries b[n][1..n], contiguous.
  std::span<const double> row(int n) const;

 private:
  std::size_t index(int n, int k) const;

  int n_steps_ = 0;
  double tau_ = 0.0;
  std::vector<double> packed_;
};

// Closed forms of the pieces of b[n][k]. With d = t_n - t_k and
// a = alpha(d), the panel integrals over s in [t_{k-1}, t_k] are
//   b1 = int ln(t_n - s) (t_n - s)^{-a} ds
//   b2 = int (t_n - s)^{-a} ds
// and R is the frozen remainder -alpha(d)/d + psi(1 - a) alpha'(d).
// For k = n the removable singularities take their limits:
//   b1 = tau (ln tau - 1),  b2 = tau,  R = -alpha'(0) (1 + gamma_e).
double weight_b1(int n, int k, double tau, const VariableExponent& exp);
double weight_b2(int n, int k, double tau, const VariableExponent& exp);
double weight_r(int n, int k, double tau, const VariableExponent& exp);

/// b[n][k] = (-alpha'(d) b1 + R b2) / Gamma(1 - a).
double weight_entry(int n, int k, double tau, const VariableExponent& exp);

/// Fills the whole table. Entries depend on (n, k) only through the lag
/// n - k, so each lag is evaluated once and copied along its diagonal.
WeightTable assemble_weights(int N, double tau, const VariableExponent& exp);

}  // namespace msd
