#include "msd/stepper.hpp"

#include <cmath>
#include <string>

#include "msd/error.hpp"
#include "msd/weights.hpp"

namespace msd {

namespace detail {

void validate_common(double T, int N, const SpatialFn& initial) {
  if (!(T > 0.0) || !std::isfinite(T)) throw ValidationError("solver: T must be positive");
  if (N < 1) throw ValidationError("solver: N must be at least 1");
  if (!initial) throw ValidationError("solver: initial data is required");
}

NodalVector source_load(const Mesh1D& mesh, const SourceFn& source, double t) {
  if (!source) return NodalVector(static_cast<std::size_t>(mesh.interior_nodes()));
  return load_vector(mesh, [&](double x) { return source(x, t); });
}

void require_finite(const NodalVector& u, int n, const char* who) {
  if (!u.all_finite()) {
    throw SolverError(std::string(who) + ": non-finite solution at step n=" + std::to_string(n));
  }
}

}  // namespace detail

SolutionHistory solve(const SolverConfig& config) {
  detail::validate_common(config.T, config.N, config.initial);
  require_valid(config.exponent, config.T);

  const int N = config.N;
  const double tau = config.tau();
  const Mesh1D& mesh = config.mesh;
  const WeightTable b = assemble_weights(N, tau, config.exponent);
  const TriDiagonalMatrix mass = assemble_mass(mesh);
  const TriDiagonalMatrix stiff = assemble_stiffness(mesh);
  const auto dofs = static_cast<std::size_t>(mesh.interior_nodes());

  SolutionHistory history{{}, config.T, N, mesh};
  history.snapshots.reserve(static_cast<std::size_t>(N) + 1);
  history.snapshots.push_back(ritz_projection(mesh, config.initial));

  NodalVector memory(dofs);
  for (int n = 1; n <= N; ++n) {
    const auto row = b.row(n);
    const double coupling = 1.0 + row[static_cast<std::size_t>(n - 1)];
    if (!(coupling > 0.0)) {
      throw SolverError("solver: 1 + b[n][n] = " + std::to_string(coupling) + " <= 0 at n=" +
                        std::to_string(n) + "; the step tau=" + std::to_string(tau) + " is too large");
    }

    std::fill(memory.values.begin(), memory.values.end(), 0.0);
    for (int k = 1; k < n; ++k) {
      const double w = row[static_cast<std::size_t>(k - 1)];
      const NodalVector& uk = history.snapshots[static_cast<std::size_t>(k)];
      for (std::size_t j = 0; j < dofs; ++j) memory[j] += w * uk[j];
    }

    NodalVector rhs = mass.apply(history.snapshots.back());
    const NodalVector load = detail::source_load(mesh, config.source, history.time(n));
    const NodalVector hist = stiff.apply(memory);
    for (std::size_t j = 0; j < dofs; ++j) rhs[j] = rhs[j] / tau + load[j] - hist[j];

    const TriDiagonalMatrix system = mass.combine(1.0 / tau, stiff, coupling);
    NodalVector un = tridiag_solve(system, rhs);
    detail::require_finite(un, n, "solver");
    history.snapshots.push_back(std::move(un));
  }
  return history;
}

double sample_solution(const SolutionHistory& history, double x, int n) {
  if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("sample_solution: x must lie in [0, 1]");
  if (n < 0 || n >= static_cast<int>(history.snapshots.size())) {
    throw ValidationError("sample_solution: step " + std::to_string(n) + " out of range");
  }
  const NodalVector& u = history.snapshots[static_cast<std::size_t>(n)];
  const int m = history.mesh.cells();
  // Global node i in 0..M; boundary nodes carry 0.
  auto node_value = [&](int i) { return (i <= 0 || i >= m) ? 0.0 : u[static_cast<std::size_t>(i - 1)]; };
  const double p = x * static_cast<double>(m);
  const int i = std::min(static_cast<int>(std::floor(p)), m);
  const double frac = p - static_cast<double>(i);
  if (frac == 0.0) return node_value(i);
  return (1.0 - frac) * node_value(i) + frac * node_value(i + 1);
}

}  // namespace msd
