#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace msd {

/// Uniform partition of (0, 1) into M cells with homogeneous Dirichlet
/// conditions eliminated: the unknowns are the M - 1 interior nodes x_j = j h.
class Mesh1D {
 public:
  explicit Mesh1D(int cells);

  int cells() const noexcept { return cells_; }
  int interior_nodes() const noexcept { return cells_ - 1; }
  double h() const noexcept { return h_; }
  /// Coordinate of interior node j in 1..M-1.
  double node(int j) const noexcept { return static_cast<double>(j) * h_; }

 private:
  int cells_;
  double h_;
};

/// Coefficients of a P1 function in the interior nodal basis.
struct NodalVector {
  std::vector<double> values;

  NodalVector() = default;
  explicit NodalVector(std::size_t n, double fill = 0.0) : values(n, fill) {}
  explicit NodalVector(std::vector<double> v) : values(std::move(v)) {}

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
  bool all_finite() const;
};

struct TriDiagonalMatrix {
  std::vector<double> sub;    // length n-1, below the diagonal
  std::vector<double> diag;   // length n
  std::vector<double> super;  // length n-1, above the diagonal

  std::size_t size() const noexcept { return diag.size(); }
  NodalVector apply(const NodalVector& x) const;
  /// Returns a*this + b*other; sizes must agree.
  TriDiagonalMatrix combine(double a, const TriDiagonalMatrix& other, double b) const;
};

using SpatialFn = std::function<double(double)>;

TriDiagonalMatrix assemble_mass(const Mesh1D& mesh);
TriDiagonalMatrix assemble_stiffness(const Mesh1D& mesh);

/// (f, phi_j) by two-point Gauss quadrature on each cell.
NodalVector load_vector(const Mesh1D& mesh, const SpatialFn& f);

/// Ritz projection onto S_h. For P1 in one dimension this is the nodal
/// interpolant. Throws ValidationError if u0 does not vanish at 0 and 1.
NodalVector ritz_projection(const Mesh1D& mesh, const SpatialFn& u0);

/// Throws SolverError on a pivot below 1e-300 in magnitude.
NodalVector tridiag_solve(const TriDiagonalMatrix& mat, const NodalVector& rhs);

enum class RefinementMode { TimeRefined, SpaceRefined };

/// sqrt(h * sum_j |coarse_j - fine_{m(j)}|^2) over the coarse interior nodes,
/// where m(j) = j for time refinement and m(j) = 2j for space refinement.
double discrete_l2_diff(const NodalVector& coarse, const NodalVector& fine, RefinementMode mode, double h);

/// sqrt(v^T M v), the exact L2 norm of the P1 function.
double l2_norm(const Mesh1D& mesh, const NodalVector& v);

}  // namespace msd
