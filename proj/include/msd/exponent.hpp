#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace msd {

using ScalarFn = std::function<double(double)>;

/// Classification by the behaviour of the exponent at t = 0.
///   Case1: alpha'(0) != 0
///   Case2: alpha'(0) == 0, alpha''(0) != 0
///   Case3: alpha'(0) == alpha''(0) == 0
enum class CaseClass { Case1, Case2, Case3, Unclassified };

const char* to_string(CaseClass c);

/// Time-dependent fractional exponent alpha(t) on [0, T] together with its
/// first two derivatives and the bounds alpha* and Q* used by the analysis.
///
/// The derivatives are supplied by the caller rather than computed; they are
/// cross-checked against finite differences by validate_assumption_a().
struct VariableExponent {
  std::string name;
  ScalarFn alpha;
  ScalarFn alpha_d1;
  ScalarFn alpha_d2;
  double alpha_star = 0.0;   // sup of alpha over [0, T]
  double deriv_bound = 0.0;  // sup of |alpha'|, |alpha''| over [0, T]
};

struct ValidationReport {
  bool starts_at_zero = false;          // |alpha(0)| <= 1e-14
  bool alpha_star_below_one = false;    // alpha* < 1
  bool within_bounds = false;           // 0 <= alpha(t) <= alpha* on the grid
  bool derivatives_bounded = false;     // |alpha'|, |alpha''| <= Q* on the grid
  bool derivatives_consistent = false;  // finite-difference cross-check
  double max_fd_mismatch = 0.0;         // scaled mismatch, see fd_tolerance
  CaseClass case_class = CaseClass::Unclassified;

  bool ok() const {
    return starts_at_zero && alpha_star_below_one && within_bounds && derivatives_bounded &&
           derivatives_consistent;
  }
};

inline constexpr double kAlphaZeroTolerance = 1e-14;
inline constexpr double kCaseZeroThreshold = 1e-10;
inline constexpr double kFdTolerance = 1e-6;
inline constexpr double kFdStep = 1e-6;

/// Samples the exponent on a uniform grid of n_samples points on [0, T] and
/// reports which clauses of the standing assumption hold.
///
/// Throws ValidationError when alpha(0) != 0, when alpha* >= 1, or when the
/// supplied derivatives disagree with central differences (alpha' against
/// alpha, alpha'' against alpha') by more than kFdTolerance * max(1, |d|).
ValidationReport validate_assumption_a(const VariableExponent& exp, double T, int n_samples);

CaseClass classify(const VariableExponent& exp);

/// Throws ValidationError unless the report is ok().
void require_valid(const VariableExponent& exp, double T, int n_samples = 257);

namespace profiles {

/// alpha(t) = 1 - exp(-t)
VariableExponent example1(double T);
/// alpha(t) = sin(t); requires T < pi/2 for alpha* < 1.
VariableExponent example2(double T);
/// alpha(t) = aT + (0 - aT) (1 - t/T - sin(2 pi (1 - t/T)) / (2 pi)),
/// smooth and monotone with alpha(0) = 0, alpha(T) = aT.
VariableExponent figure1(double T, double alpha_T);
/// alpha(t) = 0; the model reduces to the heat equation.
VariableExponent zero();
/// alpha(t) = c t^2, a Case2 exponent.
VariableExponent quadratic(double T, double c);

/// Not-a-knot cubic spline through (t_i, alpha_i). Needs at least four
/// strictly increasing samples starting at t = 0 and covering [0, T].
VariableExponent table(std::span<const double> t, std::span<const double> alpha, double T);

}  // namespace profiles

}  // namespace msd
