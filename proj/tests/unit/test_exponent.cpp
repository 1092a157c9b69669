#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "msd/error.hpp"
#include "msd/exponent.hpp"

using namespace msd;

TEST_CASE("paper exponents satisfy the standing assumption") {
  SUBCASE("1 - exp(-t) is Case1") {
    const auto r = validate_assumption_a(profiles::example1(1.0), 1.0, 101);
    CHECK(r.ok());
    CHECK(r.case_class == CaseClass::Case1);
  }
  SUBCASE("sin(t) is Case1") {
    const auto r = validate_assumption_a(profiles::example2(1.0), 1.0, 101);
    CHECK(r.ok());
    CHECK(r.case_class == CaseClass::Case1);
  }
  SUBCASE("zero exponent is Case3") {
    const auto r = validate_assumption_a(profiles::zero(), 1.0, 11);
    CHECK(r.ok());
    CHECK(r.case_class == CaseClass::Case3);
  }
  SUBCASE("figure profile is Case3") {
    const auto r = validate_assumption_a(profiles::figure1(8.0, 0.4), 8.0, 257);
    CHECK(r.ok());
    CHECK(r.case_class == CaseClass::Case3);
  }
  SUBCASE("c t^2 is Case2") {
    const auto r = validate_assumption_a(profiles::quadratic(1.0, 0.5), 1.0, 65);
    CHECK(r.ok());
    CHECK(r.case_class == CaseClass::Case2);
  }
}

TEST_CASE("figure profile endpoints and smoothness") {
  const double T = 8.0, aT = 0.4;
  const auto e = profiles::figure1(T, aT);
  CHECK(e.alpha(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(e.alpha(T) == doctest::Approx(aT).epsilon(1e-14));
  CHECK(std::abs(e.alpha_d1(0.0)) < 1e-15);
  CHECK(std::abs(e.alpha_d1(T)) < 1e-15);
  // monotone on [0, T]
  double prev = e.alpha(0.0);
  for (int i = 1; i <= 400; ++i) {
    const double a = e.alpha(T * i / 400.0);
    CHECK(a >= prev);
    prev = a;
  }
}

TEST_CASE("validation rejects broken exponents") {
  SUBCASE("nonzero start") {
    VariableExponent e{"shifted", [](double t) { return 0.1 + 0.1 * t; }, [](double) { return 0.1; },
                       [](double) { return 0.0; }, 0.3, 0.1};
    CHECK_THROWS_AS(validate_assumption_a(e, 1.0, 10), ValidationError);
  }
  SUBCASE("alpha* reaching one") {
    // sin reaches 1 at pi/2 < 2.
    CHECK_THROWS_AS(validate_assumption_a(profiles::example2(2.0), 2.0, 10), ValidationError);
  }
  SUBCASE("derivative inconsistent with alpha") {
    auto e = profiles::example1(1.0);
    e.alpha_d1 = [](double t) { return 1.01 * std::exp(-t); };
    CHECK_THROWS_AS(validate_assumption_a(e, 1.0, 10), ValidationError);
  }
  SUBCASE("second derivative inconsistent") {
    auto e = profiles::example1(1.0);
    e.alpha_d2 = [](double t) { return std::exp(-t); };
    CHECK_THROWS_AS(validate_assumption_a(e, 1.0, 10), ValidationError);
  }
  SUBCASE("bad sampling arguments") {
    CHECK_THROWS_AS(validate_assumption_a(profiles::zero(), 0.0, 10), ValidationError);
    CHECK_THROWS_AS(validate_assumption_a(profiles::zero(), 1.0, 1), ValidationError);
  }
}

TEST_CASE("understated bounds are reported, then rejected by require_valid") {
  auto e = profiles::example1(1.0);
  e.alpha_star = 0.5;  // true sup is 1 - 1/e
  const auto r = validate_assumption_a(e, 1.0, 51);
  CHECK_FALSE(r.within_bounds);
  CHECK_FALSE(r.ok());
  CHECK_THROWS_AS(require_valid(e, 1.0), ValidationError);

  auto q = profiles::example1(1.0);
  q.deriv_bound = 0.5;
  CHECK_FALSE(validate_assumption_a(q, 1.0, 51).derivatives_bounded);
  CHECK_THROWS_AS(require_valid(q, 1.0), ValidationError);
}

TEST_CASE("classification follows the derivatives at zero") {
  // Hand-rolled generator over cubic exponents c1 t + c2 t^2 + c3 t^3.
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> coef(0.05, 0.3);
  std::bernoulli_distribution on(0.5);
  for (int trial = 0; trial < 200; ++trial) {
    const double c1 = on(rng) ? coef(rng) : 0.0;
    const double c2 = on(rng) ? coef(rng) : 0.0;
    const double c3 = coef(rng);
    VariableExponent e{"cubic", [=](double t) { return t * (c1 + t * (c2 + t * c3)); },
                       [=](double t) { return c1 + t * (2 * c2 + 3 * c3 * t); },
                       [=](double t) { return 2 * c2 + 6 * c3 * t; }, c1 + c2 + c3,
                       std::max(c1 + 2 * c2 + 3 * c3, 2 * c2 + 6 * c3)};
    const auto r = validate_assumption_a(e, 1.0, 33);
    CHECK(r.ok());
    const CaseClass expected = c1 != 0.0 ? CaseClass::Case1 : (c2 != 0.0 ? CaseClass::Case2 : CaseClass::Case3);
    CHECK(r.case_class == expected);
  }
}

TEST_CASE("table profile interpolates samples with a C2 spline") {
  std::vector<double> t, a;
  for (int i = 0; i <= 24; ++i) {
    t.push_back(0.05 * i);
    a.push_back(1.0 - std::exp(-t.back()));
  }
  const auto e = profiles::table(t, a, 1.0);
  const auto r = validate_assumption_a(e, 1.0, 401);
  CHECK(r.ok());
  CHECK(r.case_class == CaseClass::Case1);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(e.alpha(t[i]) == doctest::Approx(a[i]).epsilon(1e-14));
  for (int i = 0; i <= 100; ++i) {
    const double s = i / 100.0;
    CHECK(std::abs(e.alpha(s) - (1.0 - std::exp(-s))) < 1e-6);
    CHECK(std::abs(e.alpha_d1(s) - std::exp(-s)) < 1e-4);
  }
  // exact per-piece extrema
  CHECK(e.alpha_star == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-6));
  CHECK(e.deriv_bound == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("table profile rejects malformed samples") {
  const std::vector<double> t = {0.0, 0.5, 1.0, 1.5}, a = {0.0, 0.1, 0.2, 0.3};
  CHECK_NOTHROW(profiles::table(t, a, 1.0));
  CHECK_THROWS_AS(profiles::table(std::vector<double>{0.0, 0.5, 1.0}, std::vector<double>{0, 0, 0}, 1.0),
                  ValidationError);
  CHECK_THROWS_AS(profiles::table(std::vector<double>{0.1, 0.5, 1.0, 1.5}, a, 1.0), ValidationError);
  CHECK_THROWS_AS(profiles::table(std::vector<double>{0.0, 0.5, 0.5, 1.5}, a, 1.0), ValidationError);
  CHECK_THROWS_AS(profiles::table(t, a, 2.0), ValidationError);
  // a table that does not start at alpha = 0 passes construction but fails validation
  const auto shifted = profiles::table(t, std::vector<double>{0.1, 0.2, 0.3, 0.4}, 1.0);
  CHECK_THROWS_AS(validate_assumption_a(shifted, 1.0, 10), ValidationError);
}
