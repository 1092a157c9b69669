#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "msd/error.hpp"
#include "msd/fem1d.hpp"
#include "oracles.hpp"

using namespace msd;

namespace {

constexpr double kPi = std::numbers::pi;

// Value of the P1 function with interior coefficients v at x.
double p1_value(const Mesh1D& mesh, const NodalVector& v, double x) {
  const int m = mesh.cells();
  const double p = x * m;
  const int i = std::min(static_cast<int>(p), m - 1);
  const double s = p - i;
  auto node = [&](int j) { return (j <= 0 || j >= m) ? 0.0 : v[static_cast<std::size_t>(j - 1)]; };
  return (1.0 - s) * node(i) + s * node(i + 1);
}

// int_0^1 (u - v_h)^2 by adaptive quadrature, cell by cell.
double l2_error(const Mesh1D& mesh, const NodalVector& v, const SpatialFn& u) {
  double s = 0.0;
  for (int c = 0; c < mesh.cells(); ++c) {
    const double a = c * mesh.h(), b = (c + 1) * mesh.h();
    s += oracle::integrate([&](double x) { const double d = u(x) - p1_value(mesh, v, x); return d * d; }, a, b, 1e-13);
  }
  return std::sqrt(s);
}

NodalVector random_vector(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  NodalVector v(n);
  for (auto& x : v.values) x = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("mesh basics and rejection") {
  const Mesh1D mesh(4);
  CHECK(mesh.cells() == 4);
  CHECK(mesh.interior_nodes() == 3);
  CHECK(mesh.h() == 0.25);
  CHECK(mesh.node(3) == 0.75);
  CHECK_THROWS_AS(Mesh1D(1), ValidationError);
  CHECK_THROWS_AS(Mesh1D(0), ValidationError);
}

TEST_CASE("mass matrix") {
  SUBCASE("entries at M = 4") {
    const auto m = assemble_mass(Mesh1D(4));
    REQUIRE(m.size() == 3);
    for (double d : m.diag) CHECK(d == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    for (double o : m.sub) CHECK(o == doctest::Approx(1.0 / 24.0).epsilon(1e-15));
    for (double o : m.super) CHECK(o == doctest::Approx(1.0 / 24.0).epsilon(1e-15));
  }
  SUBCASE("interior row sums equal h") {
    const Mesh1D mesh(10);
    const auto m = assemble_mass(mesh);
    for (std::size_t i = 1; i + 1 < m.size(); ++i) {
      CHECK(m.sub[i - 1] + m.diag[i] + m.super[i] == doctest::Approx(mesh.h()).epsilon(1e-14));
    }
  }
  SUBCASE("quadratic form equals the exact L2 norm of the P1 function") {
    for (int cells : {4, 9, 32}) {
      const Mesh1D mesh(cells);
      const NodalVector v = random_vector(static_cast<std::size_t>(mesh.interior_nodes()), 7u + cells);
      const double want = l2_error(mesh, v, [](double) { return 0.0; });
      CHECK(l2_norm(mesh, v) == doctest::Approx(want).epsilon(1e-10));
    }
  }
}

TEST_CASE("stiffness matrix") {
  SUBCASE("entries at M = 4") {
    const auto a = assemble_stiffness(Mesh1D(4));
    for (double d : a.diag) CHECK(d == doctest::Approx(8.0));
    for (double o : a.sub) CHECK(o == doctest::Approx(-4.0));
  }
  SUBCASE("annihilates linear data away from the boundary") {
    const Mesh1D mesh(8);
    NodalVector v(7);
    for (int j = 1; j <= 7; ++j) v[static_cast<std::size_t>(j - 1)] = 3.0 * mesh.node(j) + 1.0;
    const NodalVector av = assemble_stiffness(mesh).apply(v);
    for (std::size_t i = 1; i + 1 < av.size(); ++i) CHECK(av[i] == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
  }
  SUBCASE("smallest generalized eigenvalue approaches pi^2") {
    const Mesh1D mesh(64);
    const Eigen::MatrixXd a = oracle::dense(assemble_stiffness(mesh));
    const Eigen::MatrixXd m = oracle::dense(assemble_mass(mesh));
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a, m);
    REQUIRE(es.info() == Eigen::Success);
    const double lam = es.eigenvalues().minCoeff();
    CHECK(std::abs(lam - kPi * kPi) / (kPi * kPi) < 0.01);
    // Closed form for the discrete eigenvalue.
    const double h = mesh.h();
    const double exact = 6.0 / (h * h) * (1.0 - std::cos(kPi * h)) / (2.0 + std::cos(kPi * h));
    CHECK(lam == doctest::Approx(exact).epsilon(1e-10));
  }
  SUBCASE("both matrices are symmetric positive definite") {
    for (int cells : {2, 3, 5, 16, 100}) {
      const Mesh1D mesh(cells);
      for (const auto& t : {assemble_mass(mesh), assemble_stiffness(mesh)}) {
        const Eigen::MatrixXd d = oracle::dense(t);
        CHECK((d - d.transpose()).norm() == 0.0);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d);
        CHECK(es.eigenvalues().minCoeff() > 0.0);
      }
    }
  }
}

TEST_CASE("load vector") {
  const Mesh1D mesh(16);
  SUBCASE("zero source") {
    for (double b : load_vector(mesh, [](double) { return 0.0; }).values) CHECK(b == 0.0);
  }
  SUBCASE("unit source gives h per node") {
    for (double b : load_vector(mesh, [](double) { return 1.0; }).values) CHECK(b == doctest::Approx(mesh.h()).epsilon(1e-14));
  }
  SUBCASE("sin(pi x) against the closed form") {
    const double h = mesh.h();
    const NodalVector b = load_vector(mesh, [](double x) { return std::sin(kPi * x); });
    for (int j = 1; j <= mesh.interior_nodes(); ++j) {
      const double want = std::sin(kPi * mesh.node(j)) * 2.0 * (1.0 - std::cos(kPi * h)) / (kPi * kPi * h);
      CHECK(std::abs(b[static_cast<std::size_t>(j - 1)] - want) < 1e-6);
    }
  }
  SUBCASE("exact for cubic sources") {
    auto f = [](double x) { return x * x * x - 2.0 * x + 0.5; };
    const NodalVector b = load_vector(mesh, f);
    const double h = mesh.h();
    for (int j = 1; j <= mesh.interior_nodes(); ++j) {
      const double xj = mesh.node(j);
      auto phi = [&](double x) { return std::max(0.0, 1.0 - std::abs(x - xj) / h); };
      const double want = oracle::integrate([&](double x) { return f(x) * phi(x); }, xj - h, xj) +
                          oracle::integrate([&](double x) { return f(x) * phi(x); }, xj, xj + h);
      CHECK(b[static_cast<std::size_t>(j - 1)] == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("Ritz projection") {
  SUBCASE("reproduces a hat function") {
    const Mesh1D mesh(8);
    const double xj = mesh.node(3);
    const NodalVector v = ritz_projection(mesh, [&](double x) { return std::max(0.0, 1.0 - std::abs(x - xj) / mesh.h()); });
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == doctest::Approx(i == 2 ? 1.0 : 0.0));
  }
  SUBCASE("samples sin(pi x) at the nodes") {
    const Mesh1D mesh(12);
    const NodalVector v = ritz_projection(mesh, [](double x) { return std::sin(kPi * x); });
    for (int j = 1; j <= mesh.interior_nodes(); ++j) {
      CHECK(v[static_cast<std::size_t>(j - 1)] == doctest::Approx(std::sin(kPi * mesh.node(j))).epsilon(1e-15));
    }
  }
  SUBCASE("Galerkin orthogonality in the energy inner product") {
    // (u' - (R_h u)', phi_j') = 0, i.e. A R_h u = (-u'', phi_j) for smooth u.
    const Mesh1D mesh(16);
    auto u = [](double x) { return x * x * (1.0 - x) * (1.0 - x); };
    auto minus_upp = [](double x) { return -(2.0 - 12.0 * x + 12.0 * x * x); };
    const NodalVector r = ritz_projection(mesh, u);
    const NodalVector ar = assemble_stiffness(mesh).apply(r);
    const double h = mesh.h();
    for (int j = 1; j <= mesh.interior_nodes(); ++j) {
      const double xj = mesh.node(j);
      auto phi = [&](double x) { return std::max(0.0, 1.0 - std::abs(x - xj) / h); };
      const double rhs = oracle::integrate([&](double x) { return minus_upp(x) * phi(x); }, xj - h, xj) +
                         oracle::integrate([&](double x) { return minus_upp(x) * phi(x); }, xj, xj + h);
      CHECK(std::abs(ar[static_cast<std::size_t>(j - 1)] - rhs) < 1e-12);
    }
  }
  SUBCASE("second-order L2 accuracy") {
    auto u = [](double x) { return x * x * (1.0 - x) * (1.0 - x); };
    std::vector<double> hs, errs;
    for (int cells : {8, 16, 32, 64}) {
      const Mesh1D mesh(cells);
      hs.push_back(mesh.h());
      errs.push_back(l2_error(mesh, ritz_projection(mesh, u), u));
    }
    CHECK(oracle::loglog_slope(hs, errs) == doctest::Approx(2.0).epsilon(0.025));
  }
  SUBCASE("rejects data that does not vanish on the boundary") {
    CHECK_THROWS_AS(ritz_projection(Mesh1D(4), [](double) { return 1.0; }), ValidationError);
    CHECK_THROWS_AS(ritz_projection(Mesh1D(4), [](double x) { return x; }), ValidationError);
  }
}

TEST_CASE("tridiagonal solve") {
  SUBCASE("identity") {
    const TriDiagonalMatrix id{{0.0, 0.0}, {1.0, 1.0, 1.0}, {0.0, 0.0}};
    const NodalVector x = tridiag_solve(id, NodalVector(std::vector<double>{1.0, -2.0, 3.0}));
    CHECK(x.values == std::vector<double>{1.0, -2.0, 3.0});
  }
  SUBCASE("random SPD system against a dense solve") {
    const Mesh1D mesh(16);
    const TriDiagonalMatrix sys = assemble_mass(mesh).combine(1.0 / 0.01, assemble_stiffness(mesh), 1.3);
    const NodalVector rhs = random_vector(sys.size(), 42u);
    const Eigen::VectorXd want = oracle::dense(sys).ldlt().solve(oracle::to_eigen(rhs));
    const Eigen::VectorXd got = oracle::to_eigen(tridiag_solve(sys, rhs));
    CHECK((got - want).lpNorm<Eigen::Infinity>() <= 1e-12 * want.lpNorm<Eigen::Infinity>());
  }
  SUBCASE("-u'' = 1 is nodally exact") {
    const Mesh1D mesh(20);
    const NodalVector u = tridiag_solve(assemble_stiffness(mesh), load_vector(mesh, [](double) { return 1.0; }));
    for (int j = 1; j <= mesh.interior_nodes(); ++j) {
      const double x = mesh.node(j);
      CHECK(u[static_cast<std::size_t>(j - 1)] == doctest::Approx(0.5 * x * (1.0 - x)).epsilon(1e-12));
    }
  }
  SUBCASE("singular and mismatched systems are reported") {
    const TriDiagonalMatrix zero{{0.0}, {0.0, 0.0}, {0.0}};
    CHECK_THROWS_AS(tridiag_solve(zero, NodalVector(2, 1.0)), SolverError);
    const TriDiagonalMatrix id{{0.0}, {1.0, 1.0}, {0.0}};
    CHECK_THROWS_AS(tridiag_solve(id, NodalVector(3, 1.0)), ValidationError);
  }
}

TEST_CASE("discrete L2 difference") {
  const NodalVector a = random_vector(7, 3u);
  SUBCASE("identical vectors") { CHECK(discrete_l2_diff(a, a, RefinementMode::TimeRefined, 0.125) == 0.0); }
  SUBCASE("zero coarse vector gives the discrete norm of the matched fine values") {
    const NodalVector fine = random_vector(15, 5u);
    double s = 0.0;
    for (std::size_t j = 0; j < 7; ++j) s += fine[2 * j + 1] * fine[2 * j + 1];
    CHECK(discrete_l2_diff(NodalVector(7), fine, RefinementMode::SpaceRefined, 1.0 / 16) ==
          doctest::Approx(std::sqrt(s / 16)).epsilon(1e-15));
  }
  SUBCASE("space refinement compares shared nodes only") {
    NodalVector fine(15);
    for (std::size_t j = 0; j < 7; ++j) fine[2 * j + 1] = a[j];
    for (std::size_t j = 0; j < 15; j += 2) fine[j] = 100.0;
    CHECK(discrete_l2_diff(a, fine, RefinementMode::SpaceRefined, 1.0 / 16) == 0.0);
  }
  SUBCASE("length mismatch") {
    CHECK_THROWS_AS(discrete_l2_diff(a, NodalVector(8), RefinementMode::TimeRefined, 0.1), ValidationError);
    CHECK_THROWS_AS(discrete_l2_diff(a, NodalVector(14), RefinementMode::SpaceRefined, 0.1), ValidationError);
  }
}
