#pragma once

#include "msd/exponent.hpp"

namespace msd {

/// Memory kernel g(t) = d/dt [ t^{-alpha(t)} / Gamma(1 - alpha(t)) ] split as
/// g = prefactor * G.
struct KernelEvaluation {
  double t = 0.0;
  double prefactor = 0.0;  // t^{-alpha(t)} / Gamma(1 - alpha(t))
  double g_factor = 0.0;   // G(t)
  double g_value = 0.0;    // prefactor * G(t)
};

/// Below this time alpha(t)/t is replaced by its limit alpha'(0).
inline constexpr double kSmallTime = 1e-12;

/// exp(-alpha(t) ln t) / Gamma(1 - alpha(t)); tends to 1 as t -> 0+.
double kernel_prefactor(const VariableExponent& exp, double t);

/// G(t) = -alpha'(t) ln t - alpha(t)/t + psi(1 - alpha(t)) alpha'(t).
double g_factor(const VariableExponent& exp, double t);

KernelEvaluation g_kernel(const VariableExponent& exp, double t);

/// alpha(t)/t with the removable singularity at 0 filled by alpha'(0).
double alpha_over_t(const VariableExponent& exp, double t);

}  // namespace msd
