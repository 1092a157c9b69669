#include "msd/fem1d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "msd/detail/thomas.hpp"
#include "msd/error.hpp"

namespace msd {

Mesh1D::Mesh1D(int cells) : cells_(cells), h_(0.0) {
  if (cells < 2) throw ValidationError("mesh: need at least 2 cells, got " + std::to_string(cells));
  h_ = 1.0 / static_cast<double>(cells);
}

bool NodalVector::all_finite() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

NodalVector TriDiagonalMatrix::apply(const NodalVector& x) const {
  const std::size_t n = size();
  if (x.size() != n) throw ValidationError("tridiagonal apply: size mismatch");
  NodalVector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += sub[i - 1] * x[i - 1];
    if (i + 1 < n) s += super[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

TriDiagonalMatrix TriDiagonalMatrix::combine(double a, const TriDiagonalMatrix& other, double b) const {
  if (other.size() != size()) throw ValidationError("tridiagonal combine: size mismatch");
  TriDiagonalMatrix r = *this;
  for (std::size_t i = 0; i < r.diag.size(); ++i) r.diag[i] = a * diag[i] + b * other.diag[i];
  for (std::size_t i = 0; i < r.sub.size(); ++i) {
    r.sub[i] = a * sub[i] + b * other.sub[i];
    r.super[i] = a * super[i] + b * other.super[i];
  }
  return r;
}

namespace {

TriDiagonalMatrix constant_stencil(const Mesh1D& mesh, double diag, double off) {
  const auto n = static_cast<std::size_t>(mesh.interior_nodes());
  return {std::vector<double>(n - 1, off), std::vector<double>(n, diag), std::vector<double>(n - 1, off)};
}

}  // namespace

TriDiagonalMatrix assemble_mass(const Mesh1D& mesh) {
  const double h = mesh.h();
  return constant_stencil(mesh, 4.0 * h / 6.0, h / 6.0);
}

TriDiagonalMatrix assemble_stiffness(const Mesh1D& mesh) {
  const double h = mesh.h();
  return constant_stencil(mesh, 2.0 / h, -1.0 / h);
}

NodalVector load_vector(const Mesh1D& mesh, const SpatialFn& f) {
  const int m = mesh.cells();
  const double h = mesh.h();
  // Gauss points on the reference cell [0, 1] and the hat values there.
  const double g = 0.5 / std::sqrt(3.0);
  const double xi[2] = {0.5 - g, 0.5 + g};
  NodalVector b(static_cast<std::size_t>(mesh.interior_nodes()));
  for (int c = 0; c < m; ++c) {
    const double left = static_cast<double>(c) * h;
    double to_left = 0.0, to_right = 0.0;
    for (double s : xi) {
      const double fx = f(left + s * h);
      to_left += 0.5 * h * fx * (1.0 - s);
      to_right += 0.5 * h * fx * s;
    }
    // Cell c spans nodes c and c+1; interior node j is stored at j-1.
    if (c >= 1) b[static_cast<std::size_t>(c - 1)] += to_left;
    if (c + 1 <= m - 1) b[static_cast<std::size_t>(c)] += to_right;
  }
  return b;
}

NodalVector ritz_projection(const Mesh1D& mesh, const SpatialFn& u0) {
  const double left = u0(0.0), right = u0(1.0);
  if (std::abs(left) > 1e-12 || std::abs(right) > 1e-12) {
    throw ValidationError("ritz projection: initial data must vanish on the boundary (u0(0)=" +
                          std::to_string(left) + ", u0(1)=" + std::to_string(right) + ")");
  }
  NodalVector v(static_cast<std::size_t>(mesh.interior_nodes()));
  for (int j = 1; j <= mesh.interior_nodes(); ++j) v[static_cast<std::size_t>(j - 1)] = u0(mesh.node(j));
  return v;
}

NodalVector tridiag_solve(const TriDiagonalMatrix& mat, const NodalVector& rhs) {
  return NodalVector(detail::thomas_solve(mat.sub, mat.diag, mat.super, rhs.values));
}

double discrete_l2_diff(const NodalVector& coarse, const NodalVector& fine, RefinementMode mode, double h) {
  const std::size_t n = coarse.size();
  const std::size_t stride = mode == RefinementMode::TimeRefined ? 1 : 2;
  const std::size_t expected = mode == RefinementMode::TimeRefined ? n : 2 * n + 1;
  if (fine.size() != expected) {
    throw ValidationError("discrete_l2_diff: fine vector has " + std::to_string(fine.size()) +
                          " entries, expected " + std::to_string(expected));
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    // Interior node j+1 of the coarse mesh is node stride*(j+1) of the fine one.
    const double d = coarse[j] - fine[stride * (j + 1) - 1];
    sum += d * d;
  }
  return std::sqrt(h * sum);
}

double l2_norm(const Mesh1D& mesh, const NodalVector& v) {
  const NodalVector mv = assemble_mass(mesh).apply(v);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * mv[i];
  return std::sqrt(std::max(s, 0.0));
}

}  // namespace msd
