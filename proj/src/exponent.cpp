#include "msd/exponent.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <string>

#include "msd/detail/thomas.hpp"
#include "msd/error.hpp"

namespace msd {

const char* to_string(CaseClass c) {
  switch (c) {
    case CaseClass::Case1:
      return "Case1";
    case CaseClass::Case2:
      return "Case2";
    case CaseClass::Case3:
      return "Case3";
    case CaseClass::Unclassified:
      break;
  }
  return "Unclassified";
}

CaseClass classify(const VariableExponent& exp) {
  const double d1 = exp.alpha_d1(0.0);
  const double d2 = exp.alpha_d2(0.0);
  if (!std::isfinite(d1) || !std::isfinite(d2)) return CaseClass::Unclassified;
  if (std::abs(d1) >= kCaseZeroThreshold) return CaseClass::Case1;
  if (std::abs(d2) >= kCaseZeroThreshold) return CaseClass::Case2;
  return CaseClass::Case3;
}

namespace {

double fd_mismatch(const ScalarFn& f, const ScalarFn& df, double t) {
  const double fd = (f(t + kFdStep) - f(t - kFdStep)) / (2.0 * kFdStep);
  const double d = df(t);
  return std::abs(fd - d) / std::max(1.0, std::abs(d));
}

}  // namespace

ValidationReport validate_assumption_a(const VariableExponent& exp, double T, int n_samples) {
  if (!(T > 0.0)) throw ValidationError("exponent validation: T must be positive");
  if (n_samples < 2) throw ValidationError("exponent validation: need at least two samples");
  if (!exp.alpha || !exp.alpha_d1 || !exp.alpha_d2) {
    throw ValidationError("exponent '" + exp.name + "': alpha, alpha' and alpha'' are required");
  }

  ValidationReport report;
  const double a0 = exp.alpha(0.0);
  report.starts_at_zero = std::abs(a0) <= kAlphaZeroTolerance;
  if (!report.starts_at_zero) {
    throw ValidationError("exponent '" + exp.name + "': alpha(0) = " + std::to_string(a0) +
                          " but must vanish");
  }
  report.alpha_star_below_one = exp.alpha_star < 1.0;
  if (!report.alpha_star_below_one) {
    throw ValidationError("exponent '" + exp.name + "': alpha* = " + std::to_string(exp.alpha_star) +
                          " must be below 1");
  }

  // Slack for the last couple of ulps when a bound is attained on the grid.
  const double slack = 4.0 * std::numeric_limits<double>::epsilon();
  report.within_bounds = true;
  report.derivatives_bounded = true;
  for (int i = 0; i < n_samples; ++i) {
    const double t = T * static_cast<double>(i) / static_cast<double>(n_samples - 1);
    const double a = exp.alpha(t);
    const double d1 = exp.alpha_d1(t);
    const double d2 = exp.alpha_d2(t);
    if (!(a >= -slack && a <= exp.alpha_star * (1.0 + slack) + slack)) report.within_bounds = false;
    const double qlim = exp.deriv_bound * (1.0 + slack) + slack;
    if (!(std::abs(d1) <= qlim && std::abs(d2) <= qlim)) report.derivatives_bounded = false;
    report.max_fd_mismatch = std::max(report.max_fd_mismatch, fd_mismatch(exp.alpha, exp.alpha_d1, t));
    report.max_fd_mismatch = std::max(report.max_fd_mismatch, fd_mismatch(exp.alpha_d1, exp.alpha_d2, t));
  }
  report.derivatives_consistent = report.max_fd_mismatch <= kFdTolerance;
  if (!report.derivatives_consistent) {
    throw ValidationError("exponent '" + exp.name +
                          "': supplied derivatives disagree with finite differences (mismatch " +
                          std::to_string(report.max_fd_mismatch) + ")");
  }
  report.case_class = classify(exp);
  return report;
}

void require_valid(const VariableExponent& exp, double T, int n_samples) {
  const ValidationReport r = validate_assumption_a(exp, T, n_samples);
  if (!r.within_bounds) {
    throw ValidationError("exponent '" + exp.name + "': alpha leaves [0, alpha*] on [0, T]");
  }
  if (!r.derivatives_bounded) {
    throw ValidationError("exponent '" + exp.name + "': |alpha'| or |alpha''| exceeds Q*");
  }
}

namespace profiles {

VariableExponent example1(double T) {
  return {"exp-example1",
          [](double t) { return -std::expm1(-t); },
          [](double t) { return std::exp(-t); },
          [](double t) { return -std::exp(-t); },
          -std::expm1(-T),
          1.0};
}

VariableExponent example2(double T) {
  return {"exp-example2",
          [](double t) { return std::sin(t); },
          [](double t) { return std::cos(t); },
          [](double t) { return -std::sin(t); },
          std::sin(std::min(T, std::numbers::pi / 2.0)),
          1.0};
}

VariableExponent figure1(double T, double alpha_T) {
  if (!(T > 0.0)) throw ValidationError("figure1 exponent: T must be positive");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return {"exp-figure1",
          [=](double t) {
            const double s = t / T;
            return alpha_T * (s + std::sin(two_pi * (1.0 - s)) / two_pi);
          },
          [=](double t) { return alpha_T / T * (1.0 - std::cos(two_pi * (1.0 - t / T))); },
          [=](double t) { return -two_pi * alpha_T / (T * T) * std::sin(two_pi * (1.0 - t / T)); },
          std::max(alpha_T, 0.0),
          std::max(2.0 * std::abs(alpha_T) / T, two_pi * std::abs(alpha_T) / (T * T))};
}

VariableExponent zero() {
  return {"zero", [](double) { return 0.0; }, [](double) { return 0.0; }, [](double) { return 0.0; },
          0.0, 0.0};
}

VariableExponent quadratic(double T, double c) {
  return {"quadratic",
          [=](double t) { return c * t * t; },
          [=](double t) { return 2.0 * c * t; },
          [=](double) { return 2.0 * c; },
          std::max(0.0, c * T * T),
          std::max(std::abs(2.0 * c * T), std::abs(2.0 * c))};
}

namespace {

// Cubic spline stored by knot values and second-derivative moments.
struct Spline {
  std::vector<double> t, y, m;

  std::size_t segment(double x) const {
    auto it = std::upper_bound(t.begin(), t.end(), x);
    std::size_t i = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
    return std::min(i, t.size() - 2);
  }

  // Power-form coefficients of segment i in b = x - t_i.
  std::array<double, 4> coeffs(std::size_t i) const {
    const double h = t[i + 1] - t[i];
    const double c1 = (y[i + 1] - y[i]) / h - h * (2.0 * m[i] + m[i + 1]) / 6.0;
    return {y[i], c1, 0.5 * m[i], (m[i + 1] - m[i]) / (6.0 * h)};
  }

  double eval(double x, int deriv) const {
    const std::size_t i = segment(x);
    const auto c = coeffs(i);
    const double b = x - t[i];
    switch (deriv) {
      case 0:
        return c[0] + b * (c[1] + b * (c[2] + b * c[3]));
      case 1:
        return c[1] + b * (2.0 * c[2] + 3.0 * b * c[3]);
      default:
        return 2.0 * c[2] + 6.0 * b * c[3];
    }
  }
};

Spline build_not_a_knot(std::span<const double> t, std::span<const double> y) {
  const std::size_t n = t.size();
  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = t[i + 1] - t[i];

  // Unknowns m_1..m_{n-2}; m_0 and m_{n-1} are eliminated by the
  // not-a-knot conditions at t_1 and t_{n-2}.
  const std::size_t k = n - 2;
  std::vector<double> sub(k - 1), diag(k), super(k - 1), rhs(k);
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t i = r + 1;
    rhs[r] = 6.0 * ((y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1]);
    diag[r] = 2.0 * (h[i - 1] + h[i]);
    if (r + 1 < k) super[r] = h[i];
    if (r > 0) sub[r - 1] = h[i - 1];
  }
  diag[0] += h[0] * (h[0] + h[1]) / h[1];
  if (k > 1) {
    super[0] -= h[0] * h[0] / h[1];
  }
  const std::size_t l = n - 2;
  diag[k - 1] += h[l] * (h[l] + h[l - 1]) / h[l - 1];
  if (k > 1) {
    sub[k - 2] -= h[l] * h[l] / h[l - 1];
  } else {
    // n == 3 would make both conditions act on the same unknown.
    throw ValidationError("table exponent: need at least four samples");
  }

  std::vector<double> inner = detail::thomas_solve(sub, diag, super, rhs);
  Spline s{{t.begin(), t.end()}, {y.begin(), y.end()}, std::vector<double>(n)};
  for (std::size_t r = 0; r < k; ++r) s.m[r + 1] = inner[r];
  s.m[0] = ((h[0] + h[1]) * s.m[1] - h[0] * s.m[2]) / h[1];
  s.m[n - 1] = ((h[l] + h[l - 1]) * s.m[n - 2] - h[l] * s.m[n - 3]) / h[l - 1];
  return s;
}

}  // namespace

VariableExponent table(std::span<const double> t, std::span<const double> alpha, double T) {
  if (t.size() != alpha.size()) throw ValidationError("table exponent: t and alpha lengths differ");
  if (t.size() < 4) throw ValidationError("table exponent: need at least four samples");
  if (t.front() != 0.0) throw ValidationError("table exponent: first sample must be at t = 0");
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (!(t[i + 1] > t[i])) throw ValidationError("table exponent: times must increase strictly");
  }
  if (!(T > 0.0) || t.back() < T) throw ValidationError("table exponent: samples must cover [0, T]");

  auto spline = std::make_shared<const Spline>(build_not_a_knot(t, alpha));

  // Exact extrema of each cubic piece restricted to [0, T].
  double amax = 0.0, qmax = 0.0;
  for (std::size_t i = 0; i + 1 < spline->t.size() && spline->t[i] < T; ++i) {
    const auto c = spline->coeffs(i);
    const double len = std::min(spline->t[i + 1], T) - spline->t[i];
    auto value = [&](double b) { return c[0] + b * (c[1] + b * (c[2] + b * c[3])); };
    auto slope = [&](double b) { return c[1] + b * (2.0 * c[2] + 3.0 * b * c[3]); };
    auto curv = [&](double b) { return 2.0 * c[2] + 6.0 * b * c[3]; };
    std::vector<double> cand = {0.0, len};
    // Roots of the slope quadratic 3 c3 b^2 + 2 c2 b + c1.
    const double qa = 3.0 * c[3], qb = 2.0 * c[2], qc = c[1];
    if (qa != 0.0) {
      const double disc = qb * qb - 4.0 * qa * qc;
      if (disc >= 0.0) {
        cand.push_back((-qb + std::sqrt(disc)) / (2.0 * qa));
        cand.push_back((-qb - std::sqrt(disc)) / (2.0 * qa));
      }
      cand.push_back(-qb / (2.0 * qa));  // vertex of the slope
    } else if (qb != 0.0) {
      cand.push_back(-qc / qb);
    }
    for (double b : cand) {
      if (b < 0.0 || b > len) continue;
      amax = std::max(amax, value(b));
      qmax = std::max({qmax, std::abs(slope(b)), std::abs(curv(b))});
    }
  }

  return {"table",
          [spline](double x) { return spline->eval(x, 0); },
          [spline](double x) { return spline->eval(x, 1); },
          [spline](double x) { return spline->eval(x, 2); },
          amax,
          qmax};
}

}  // namespace profiles

}  // namespace msd
