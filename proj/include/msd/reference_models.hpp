#pragma once

#include <vector>

#include "msd/stepper.hpp"

namespace msd {

/// Backward-Euler P1 solve of u_t - u_xx = f. The exponent in the config is
/// not used.
SolutionHistory heat_solve(const SolverConfig& config);

/// Constant-exponent model u_t - D^{alpha_bar} u_xx = f with the
/// Riemann-Liouville derivative.
struct ConstantExponentConfig {
  double alpha_bar = 0.5;
  double T = 1.0;
  int N = 1;
  Mesh1D mesh{2};
  SourceFn source;
  SpatialFn initial;

  double tau() const { return T / static_cast<double>(N); }
};

/// Coefficients omega_0..omega_count of (1 - z)^alpha:
/// omega_0 = 1, omega_j = omega_{j-1} (j - 1 - alpha) / j.
std::vector<double> cq_weights(double alpha, int count);

/// First-order convolution quadrature for the fractional term,
///   [M/tau + tau^{-a} A] U_n = (M/tau) U_{n-1} + F_n - tau^{-a} A sum_{j=1}^{n} omega_j U_{n-j}.
/// U_0 takes part in the history sum.
SolutionHistory constant_subdiffusion_solve(const ConstantExponentConfig& config);

struct Figure1Series {
  std::vector<double> t;
  std::vector<double> heat;
  std::vector<double> multiscale;
  std::vector<double> subdiffusion;
};

/// u(x, t_n) for the multiscale model with the smooth monotone exponent
/// rising from 0 to alpha_T, the heat equation, and the constant-exponent
/// model with alpha_bar = alpha_T. u0 = sin(pi x), f = 0. The three solves
/// run concurrently on identical grids.
Figure1Series figure1_profiles(double T, double alpha_T, int N, int M, double x = 0.5);

}  // namespace msd
