#include "msd/reference_models.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <string>

#include "msd/error.hpp"

namespace msd {

SolutionHistory heat_solve(const SolverConfig& config) {
  detail::validate_common(config.T, config.N, config.initial);
  const double tau = config.tau();
  const Mesh1D& mesh = config.mesh;
  const TriDiagonalMatrix mass = assemble_mass(mesh);
  const TriDiagonalMatrix stiff = assemble_stiffness(mesh);
  const TriDiagonalMatrix system = mass.combine(1.0 / tau, stiff, 1.0);

  SolutionHistory history{{}, config.T, config.N, mesh};
  history.snapshots.reserve(static_cast<std::size_t>(config.N) + 1);
  history.snapshots.push_back(ritz_projection(mesh, config.initial));
  for (int n = 1; n <= config.N; ++n) {
    NodalVector rhs = mass.apply(history.snapshots.back());
    const NodalVector load = detail::source_load(mesh, config.source, history.time(n));
    for (std::size_t j = 0; j < rhs.size(); ++j) rhs[j] = rhs[j] / tau + load[j];
    NodalVector un = tridiag_solve(system, rhs);
    detail::require_finite(un, n, "heat solver");
    history.snapshots.push_back(std::move(un));
  }
  return history;
}

std::vector<double> cq_weights(double alpha, int count) {
  if (count < 0) throw ValidationError("cq_weights: count must be non-negative");
  std::vector<double> w(static_cast<std::size_t>(count) + 1);
  w[0] = 1.0;
  for (int j = 1; j <= count; ++j) {
    const auto i = static_cast<std::size_t>(j);
    w[i] = w[i - 1] * (static_cast<double>(j) - 1.0 - alpha) / static_cast<double>(j);
  }
  return w;
}

SolutionHistory constant_subdiffusion_solve(const ConstantExponentConfig& config) {
  if (!(config.alpha_bar > 0.0 && config.alpha_bar < 1.0)) {
    throw ValidationError("constant-exponent solver: alpha_bar must lie in (0, 1), got " +
                          std::to_string(config.alpha_bar));
  }
  detail::validate_common(config.T, config.N, config.initial);

  const int N = config.N;
  const double tau = config.tau();
  const double scale = std::pow(tau, -config.alpha_bar);
  const std::vector<double> omega = cq_weights(config.alpha_bar, N);
  const Mesh1D& mesh = config.mesh;
  const TriDiagonalMatrix mass = assemble_mass(mesh);
  const TriDiagonalMatrix stiff = assemble_stiffness(mesh);
  const TriDiagonalMatrix system = mass.combine(1.0 / tau, stiff, scale * omega[0]);
  const auto dofs = static_cast<std::size_t>(mesh.interior_nodes());

  SolutionHistory history{{}, config.T, N, mesh};
  history.snapshots.reserve(static_cast<std::size_t>(N) + 1);
  history.snapshots.push_back(ritz_projection(mesh, config.initial));

  NodalVector memory(dofs);
  for (int n = 1; n <= N; ++n) {
    std::fill(memory.values.begin(), memory.values.end(), 0.0);
    for (int j = 1; j <= n; ++j) {
      const double w = omega[static_cast<std::size_t>(j)];
      const NodalVector& u = history.snapshots[static_cast<std::size_t>(n - j)];
      for (std::size_t i = 0; i < dofs; ++i) memory[i] += w * u[i];
    }
    NodalVector rhs = mass.apply(history.snapshots.back());
    const NodalVector load = detail::source_load(mesh, config.source, history.time(n));
    const NodalVector hist = stiff.apply(memory);
    for (std::size_t i = 0; i < dofs; ++i) rhs[i] = rhs[i] / tau + load[i] - scale * hist[i];
    NodalVector un = tridiag_solve(system, rhs);
    detail::require_finite(un, n, "constant-exponent solver");
    history.snapshots.push_back(std::move(un));
  }
  return history;
}

Figure1Series figure1_profiles(double T, double alpha_T, int N, int M, double x) {
  if (!(alpha_T > 0.0 && alpha_T < 1.0)) {
    throw ValidationError("figure1: alpha(T) must lie in (0, 1), got " + std::to_string(alpha_T));
  }
  const Mesh1D mesh(M);
  const SpatialFn u0 = [](double y) { return std::sin(std::numbers::pi * y); };

  SolverConfig multiscale{T, N, mesh, profiles::figure1(T, alpha_T), {}, u0};
  SolverConfig fickian{T, N, mesh, profiles::zero(), {}, u0};
  ConstantExponentConfig constant{alpha_T, T, N, mesh, {}, u0};

  auto multiscale_run = std::async(std::launch::async, [&] { return solve(multiscale); });
  auto heat_run = std::async(std::launch::async, [&] { return heat_solve(fickian); });
  auto constant_run = std::async(std::launch::async, [&] { return constant_subdiffusion_solve(constant); });
  const SolutionHistory ms = multiscale_run.get();
  const SolutionHistory ht = heat_run.get();
  const SolutionHistory sd = constant_run.get();

  Figure1Series out;
  for (int n = 0; n <= N; ++n) {
    out.t.push_back(ms.time(n));
    out.heat.push_back(sample_solution(ht, x, n));
    out.multiscale.push_back(sample_solution(ms, x, n));
    out.subdiffusion.push_back(sample_solution(sd, x, n));
  }
  return out;
}

}  // namespace msd
