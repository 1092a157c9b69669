#pragma once

namespace msd {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Gamma'(x)/Gamma(x) for x > 0. Shifts the argument above 10 with
/// psi(x) = psi(x + 1) - 1/x and finishes with the asymptotic series.
/// Absolute error is below 1e-14 on (0, 1].
double digamma(double x);

/// Gamma(x); thin wrapper so callers use one spelling for both functions.
double gamma_fn(double x);

}  // namespace msd
