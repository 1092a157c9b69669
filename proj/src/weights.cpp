#include "msd/weights.hpp"

#include <cmath>
#include <string>

#include "msd/error.hpp"
#include "msd/kernel.hpp"
#include "msd/special_functions.hpp"

namespace msd {

WeightTable::WeightTable(int n_steps, double tau) : n_steps_(n_steps), tau_(tau) {
  if (n_steps < 1) throw ValidationError("weight table: N must be at least 1");
  if (!(tau > 0.0)) throw ValidationError("weight table: tau must be positive");
  const auto n = static_cast<std::size_t>(n_steps);
  packed_.assign(n * (n + 1) / 2, 0.0);
}

std::size_t WeightTable::index(int n, int k) const {
  if (k < 1 || k > n || n > n_steps_) {
    throw ValidationError("weight table: entry (" + std::to_string(n) + ", " + std::to_string(k) +
                          ") outside 1 <= k <= n <= " + std::to_string(n_steps_));
  }
  const auto nn = static_cast<std::size_t>(n);
  return nn * (nn - 1) / 2 + static_cast<std::size_t>(k - 1);
}

double WeightTable::at(int n, int k) const { return packed_[index(n, k)]; }
double& WeightTable::at(int n, int k) { return packed_[index(n, k)]; }

std::span<const double> WeightTable::row(int n) const {
  return std::span<const double>(packed_).subspan(index(n, 1), static_cast<std::size_t>(n));
}

namespace {

void check_indices(int n, int k, double tau, const char* what) {
  if (k < 1 || k > n) {
    throw ValidationError(std::string(what) + ": need 1 <= k <= n, got n=" + std::to_string(n) +
                          " k=" + std::to_string(k));
  }
  if (!(tau > 0.0)) throw ValidationError(std::string(what) + ": tau must be positive");
}

// Lag offsets t_n - t_k and t_n - t_{k-1}.
struct Panel {
  double near;
  double far;
};

Panel panel(int n, int k, double tau) {
  return {static_cast<double>(n - k) * tau, static_cast<double>(n - k + 1) * tau};
}

}  // namespace

double weight_b1(int n, int k, double tau, const VariableExponent& exp) {
  check_indices(n, k, tau, "weight_b1");
  if (k == n) return tau * (std::log(tau) - 1.0);
  const auto [near, far] = panel(n, k, tau);
  const double c = 1.0 - exp.alpha(near);
  auto antiderivative = [c](double y) { return std::pow(y, c) / c * (std::log(y) - 1.0 / c); };
  return antiderivative(far) - antiderivative(near);
}

double weight_b2(int n, int k, double tau, const VariableExponent& exp) {
  check_indices(n, k, tau, "weight_b2");
  if (k == n) return tau;
  const auto [near, far] = panel(n, k, tau);
  const double c = 1.0 - exp.alpha(near);
  return (std::pow(far, c) - std::pow(near, c)) / c;
}

double weight_r(int n, int k, double tau, const VariableExponent& exp) {
  check_indices(n, k, tau, "weight_r");
  if (k == n) return -exp.alpha_d1(0.0) * (1.0 + kEulerGamma);
  const double near = panel(n, k, tau).near;
  return -alpha_over_t(exp, near) + digamma(1.0 - exp.alpha(near)) * exp.alpha_d1(near);
}

double weight_entry(int n, int k, double tau, const VariableExponent& exp) {
  check_indices(n, k, tau, "weight_entry");
  const double near = panel(n, k, tau).near;
  const double a = k == n ? 0.0 : exp.alpha(near);
  const double d1 = k == n ? exp.alpha_d1(0.0) : exp.alpha_d1(near);
  const double b1 = weight_b1(n, k, tau, exp);
  const double b2 = weight_b2(n, k, tau, exp);
  const double r = weight_r(n, k, tau, exp);
  return (-d1 * b1 + r * b2) / gamma_fn(1.0 - a);
}

WeightTable assemble_weights(int N, double tau, const VariableExponent& exp) {
  WeightTable table(N, tau);
  require_valid(exp, static_cast<double>(N) * tau);

  std::vector<double> by_lag(static_cast<std::size_t>(N));
  for (int lag = 0; lag < N; ++lag) {
    const int n = lag + 1;
    double b = 0.0;
    try {
      b = weight_entry(n, 1, tau, exp);
    } catch (const std::exception& e) {
      throw SolverError("memory weight (n=" + std::to_string(n) + ", k=1): " + e.what());
    }
    if (!std::isfinite(b)) {
      throw SolverError("memory weight (n=" + std::to_string(n) + ", k=1) is not finite");
    }
    by_lag[static_cast<std::size_t>(lag)] = b;
  }
  for (int n = 1; n <= N; ++n) {
    for (int k = 1; k <= n; ++k) table.at(n, k) = by_lag[static_cast<std::size_t>(n - k)];
  }
  return table;
}

}  // namespace msd
