#include "lslab/biharmonic.hpp"

#include <cmath>

namespace lslab {

namespace {

// Ghost-point elimination at the left end. Writing u0 for the boundary value
// and um1 for the ghost point x = -h, each condition pair fixes both in terms
// of u1, u2 (units of h^-4 applied by the caller):
//   Clamped:     u0 = 0,               um1 = u1
//   Hinged:      u0 = 0,               um1 = -u1
//   Free:        u0 = 2 u1 - u2,       um1 = 3 u1 - 2 u2
//   NeumannPair: u0 = (4 u1 - u2) / 3, um1 = u1
// Row 1 of the raw stencil reads um1 - 4 u0 + 6 u1 - 4 u2 + u3 and row 2
// reads u0 - 4 u1 + 6 u2 - 4 u3 + u4; substituting gives the 2x2 corner
// block below, symmetric in every case.
struct CornerBlock {
  double a11, a12, a22;  // additions to rows 1-2 at columns 1-2
};

CornerBlock corner(BcKind kind) {
  switch (kind) {
    case BcKind::Clamped:
      return {7.0, -4.0, 6.0};
    case BcKind::Hinged:
      return {5.0, -4.0, 6.0};
    case BcKind::Free:
      return {1.0, -2.0, 5.0};
    case BcKind::NeumannPair:
      return {5.0 / 3.0, -8.0 / 3.0, 17.0 / 3.0};
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Eigen::MatrixXd assemble(const Grid1D& grid, const BcPair& bc) {
  const int n = grid.n;
  const double h = grid.h();
  const double s = 1.0 / (h * h * h * h);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = 6.0 * s;
    if (i + 1 < n) {
      a(i, i + 1) = -4.0 * s;
      a(i + 1, i) = -4.0 * s;
    }
    if (i + 2 < n) {
      a(i, i + 2) = s;
      a(i + 2, i) = s;
    }
  }
  const CornerBlock l = corner(bc.left);
  a(0, 0) = l.a11 * s;
  a(0, 1) = l.a12 * s;
  a(1, 0) = l.a12 * s;
  a(1, 1) = l.a22 * s;
  const CornerBlock r = corner(bc.right);
  a(n - 1, n - 1) = r.a11 * s;
  a(n - 1, n - 2) = r.a12 * s;
  a(n - 2, n - 1) = r.a12 * s;
  a(n - 2, n - 2) = r.a22 * s;
  return a;
}

bool check_nonnegativity(const Eigen::MatrixXd& a) {
  if (!a.isApprox(a.transpose(), 0.0))
    throw std::invalid_argument("check_nonnegativity: matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const double norm = std::max(std::abs(es.eigenvalues().minCoeff()),
                               std::abs(es.eigenvalues().maxCoeff()));
  return es.eigenvalues().minCoeff() >= -1e-9 * norm;
}

EigenDecomposition eigendecompose(const Eigen::MatrixXd& a, double h) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigendecompose: square matrix required");
  if (a.rows() > 2048) throw std::invalid_argument("eigendecompose: dense solver capped at n = 2048");
  if (!(h > 0.0)) throw std::invalid_argument("eigendecompose: h must be positive");
  if (!a.isApprox(a.transpose(), 1e-12))
    throw std::invalid_argument("eigendecompose: matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecompose: eigensolver did not converge");
  EigenDecomposition out;
  out.mu = es.eigenvalues();
  out.phi = es.eigenvectors() / std::sqrt(h);  // unit h-weighted norm
  out.h = h;
  if (out.mu(0) <= 0.0) {
    out.shift = 1.0 + std::abs(out.mu(0));
    out.mu.array() += out.shift;
  }
  return out;
}

}  // namespace lslab
