#ifndef LSLAB_BIHARMONIC_HPP
#define LSLAB_BIHARMONIC_HPP

#include <Eigen/Dense>
#include <stdexcept>

namespace lslab {

/// Uniform grid of n interior points on (0, L); h = L / (n + 1).
struct Grid1D {
  int n = 0;
  double length = 0.0;

  Grid1D(int n_, double length_) : n(n_), length(length_) {
    if (n < 8) throw std::invalid_argument("grid needs at least 8 interior points");
    if (!(length > 0.0)) throw std::invalid_argument("grid length must be positive");
  }
  double h() const { return length / (n + 1); }
  double x(int i) const { return (i + 1) * h(); }  // interior index 0..n-1
};

/// Boundary pair at one endpoint: which two scalar conditions hold there.
enum class BcKind {
  Clamped,      // u = 0, u' = 0
  Hinged,       // u = 0, u'' = 0
  Free,         // u'' = 0, u''' = 0
  NeumannPair,  // u' = 0, u''' = 0
};

struct BcPair {
  BcKind left = BcKind::Hinged;
  BcKind right = BcKind::Hinged;
};

struct EigenDecomposition {
  Eigen::VectorXd mu;   // ascending; strictly positive after the shift
  Eigen::MatrixXd phi;  // columns, orthonormal in the h-weighted inner product
  double shift = 0.0;   // lambda added when the raw spectrum touches zero
  double h = 0.0;
};

/// d^4/dx^4 on the interior points, 5-point stencil with ghost elimination.
/// The result is exactly symmetric for every BcKind combination.
Eigen::MatrixXd assemble(const Grid1D& grid, const BcPair& bc);

/// True iff the smallest eigenvalue is >= -1e-9 * ||A||.
bool check_nonnegativity(const Eigen::MatrixXd& a);

/// Dense symmetric eigendecomposition, h-weighted normalization. Applies the
/// shift lambda = 1 + |mu_min| when the smallest eigenvalue is <= 0. Capped
/// at n <= 2048.
EigenDecomposition eigendecompose(const Eigen::MatrixXd& a, double h);

}  // namespace lslab

#endif
