#include "msd/special_functions.hpp"

#include <cmath>
#include <string>

#include "msd/error.hpp"

namespace msd {

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw ValidationError("digamma: argument must be positive and finite, got " + std::to_string(x));
  }
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  // Bernoulli terms B_2k / (2k x^2k), k = 1..7.
  const double r = 1.0 / (x * x);
  const double series =
      r * (1.0 / 12 -
           r * (1.0 / 120 -
                r * (1.0 / 252 -
                     r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760 - r * (1.0 / 12)))))));
  return shift + std::log(x) - 0.5 / x - series;
}

double gamma_fn(double x) { return std::tgamma(x); }

}  // namespace msd
