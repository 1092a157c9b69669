#pragma once

#include <functional>
#include <vector>

#include "msd/exponent.hpp"
#include "msd/fem1d.hpp"

namespace msd {

using SourceFn = std::function<double(double x, double t)>;

struct SolverConfig {
  double T = 1.0;
  int N = 1;
  Mesh1D mesh{2};
  VariableExponent exponent;
  SourceFn source;    // empty means f = 0
  SpatialFn initial;  // must vanish at x = 0 and x = 1

  double tau() const { return T / static_cast<double>(N); }
};

/// U_0 .. U_N on the interior nodes, U_0 being the Ritz projection of u0.
struct SolutionHistory {
  std::vector<NodalVector> snapshots;
  double T = 0.0;
  int N = 0;
  Mesh1D mesh{2};

  double tau() const { return T / static_cast<double>(N); }
  double time(int n) const { return static_cast<double>(n) * tau(); }
  const NodalVector& final_state() const { return snapshots.back(); }
};

/// Backward Euler with the discrete memory term: for n = 1..N solves
///   [M/tau + (1 + b[n][n]) A] U_n = (M/tau) U_{n-1} + F_n - A sum_{k<n} b[n][k] U_k.
///
/// Throws ValidationError for an invalid configuration and SolverError when
/// 1 + b[n][n] <= 0, a pivot vanishes, or a snapshot becomes non-finite.
SolutionHistory solve(const SolverConfig& config);

/// Piecewise-linear interpolation of snapshot n at x in [0, 1].
double sample_solution(const SolutionHistory& history, double x, int n);

namespace detail {
void validate_common(double T, int N, const SpatialFn& initial);
NodalVector source_load(const Mesh1D& mesh, const SourceFn& source, double t);
void require_finite(const NodalVector& u, int n, const char* who);
}  // namespace detail

}  // namespace msd
