#include "msd/kernel.hpp"

#include <cmath>
#include <string>

#include "msd/error.hpp"
#include "msd/special_functions.hpp"

namespace msd {

namespace {

void require_positive_time(double t, const char* what) {
  if (!(t > 0.0)) throw ValidationError(std::string(what) + ": t must be positive, got " + std::to_string(t));
}

}  // namespace

double alpha_over_t(const VariableExponent& exp, double t) {
  if (t < kSmallTime) return exp.alpha_d1(0.0);
  return (exp.alpha(t) - exp.alpha(0.0)) / t;
}

double kernel_prefactor(const VariableExponent& exp, double t) {
  require_positive_time(t, "kernel_prefactor");
  const double a = exp.alpha(t);
  return std::exp(-a * std::log(t)) / gamma_fn(1.0 - a);
}

double g_factor(const VariableExponent& exp, double t) {
  require_positive_time(t, "g_factor");
  const double a = exp.alpha(t);
  const double d1 = exp.alpha_d1(t);
  return -d1 * std::log(t) - alpha_over_t(exp, t) + digamma(1.0 - a) * d1;
}

KernelEvaluation g_kernel(const VariableExponent& exp, double t) {
  KernelEvaluation ev;
  ev.t = t;
  ev.prefactor = kernel_prefactor(exp, t);
  ev.g_factor = g_factor(exp, t);
  ev.g_value = ev.prefactor * ev.g_factor;
  return ev;
}

}  // namespace msd
