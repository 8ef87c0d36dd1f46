#include "lslab/spectral.hpp"

#include <cmath>
#include <limits>

namespace lslab {

namespace {

constexpr double kBeta = 0.70710678118654752440;  // sqrt(2)/2

int mode_count(const EigenDecomposition& eig, double mu) {
  int dim = 0;
  while (dim < eig.mu.size() && eig.mu(dim) <= mu) ++dim;
  return dim;
}

double simpson(double (*g)(double), double lo, double hi, double flo, double fmid, double fhi,
               double target, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lmid = 0.5 * (lo + mid);
  const double rmid = 0.5 * (mid + hi);
  const double fl = g(lmid);
  const double fr = g(rmid);
  const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  const double left = (mid - lo) / 6.0 * (flo + 4.0 * fl + fmid);
  const double right = (hi - mid) / 6.0 * (fmid + 4.0 * fr + fhi);
  const double err = left + right - whole;
  if (depth <= 0 || std::abs(err) < 15.0 * target)
    return left + right + err / 15.0;
  return simpson(g, lo, mid, flo, fl, fmid, target / 2.0, depth - 1) +
         simpson(g, mid, hi, fmid, fr, fhi, target / 2.0, depth - 1);
}

double h_squared(double s) {
  const double v = h_form(s);
  return v * v;
}

}  // namespace

int ObservationWindow::count() const {
  int c = 0;
  for (bool b : mask)
    if (b) ++c;
  return c;
}

bool ObservationWindow::full() const { return count() == static_cast<int>(mask.size()); }

void ObservationWindow::validate(int n) const {
  if (static_cast<int>(mask.size()) != n)
    throw std::invalid_argument("observation window length does not match the grid");
  if (count() == 0) throw std::invalid_argument("observation window is empty");
}

ObservationWindow ObservationWindow::all(int n) {
  return ObservationWindow{std::vector<bool>(static_cast<size_t>(n), true)};
}

ObservationWindow ObservationWindow::interval(const Grid1D& grid, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("window interval must have a < b");
  ObservationWindow w{std::vector<bool>(static_cast<size_t>(grid.n), false)};
  for (int i = 0; i < grid.n; ++i)
    if (grid.x(i) >= a && grid.x(i) <= b) w.mask[static_cast<size_t>(i)] = true;
  w.validate(grid.n);
  return w;
}

ObservationWindow ObservationWindow::left_fraction(const Grid1D& grid, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw std::invalid_argument("window fraction must be in (0, 1]");
  return interval(grid, 0.0, fraction * grid.length);
}

ObservabilityPoint observability_constant(const EigenDecomposition& eig,
                                          const ObservationWindow& omega, double mu) {
  omega.validate(static_cast<int>(eig.phi.rows()));
  const int dim = mode_count(eig, mu);
  if (dim == 0) throw std::invalid_argument("no eigenvalue below the threshold mu");
  // The Gram matrix is G = R^T R with R the sqrt(h)-weighted restriction of
  // the mode block to the window. Taking the SVD of R instead of the
  // eigenvalues of G computes the same lambda_min = sigma_min^2 without
  // squaring the condition number.
  const int rows = omega.count();
  Eigen::MatrixXd restricted(rows, dim);
  {
    int k = 0;
    const double sqrt_h = std::sqrt(eig.h);
    for (int i = 0; i < static_cast<int>(omega.mask.size()); ++i) {
      if (!omega.mask[static_cast<size_t>(i)]) continue;
      restricted.row(k++) = sqrt_h * eig.phi.row(i).head(dim);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(restricted, Eigen::ComputeThinV);
  ObservabilityPoint out;
  out.mu = mu;
  out.dim = dim;
  out.extremal = svd.matrixV().col(dim - 1);
  const double smin = svd.singularValues()(dim - 1);
  const double smax = svd.singularValues()(0);
  if (rows < dim || smin <= 1e-13 * smax) {
    out.singular = true;
    out.K = std::numeric_limits<double>::infinity();
  } else {
    out.K = 1.0 / smin;
  }
  return out;
}

ScalingFit fit_scaling(const std::vector<ObservabilityPoint>& points) {
  if (points.size() < 4) throw std::invalid_argument("fit_scaling: need at least 4 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(points.size());
  for (const auto& p : points) {
    if (!std::isfinite(p.K) || p.K <= 0.0)
      throw std::invalid_argument("fit_scaling: points must have finite positive K");
    const double x = std::pow(p.mu, 0.25);
    const double y = std::log(p.K);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-14 * n * sxx)
    throw std::invalid_argument("fit_scaling: degenerate fit, mu values must be distinct");
  ScalingFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (const auto& p : points) {
    const double x = std::pow(p.mu, 0.25);
    const double res = std::abs(std::log(p.K) - (fit.slope * x + fit.intercept));
    fit.max_residual = std::max(fit.max_residual, res);
  }
  return fit;
}

FKernel f_kernel(double s) {
  const double t = kBeta * s;
  const double sn = std::sin(t), cs = std::cos(t);
  const double sh = std::sinh(t), ch = std::cosh(t);
  FKernel k;
  k.f = kBeta * (sn * ch - cs * sh);
  k.df = sn * sh;
  k.d2f = kBeta * (cs * sh + sn * ch);
  k.d3f = cs * ch;
  return k;
}

double h_form(double t) {
  return 0.5 * (std::exp(-t) * std::cos(t - M_PI / 4.0) - std::exp(t) * std::cos(t + M_PI / 4.0));
}

double h_integral(double a, double b, double t) {
  if (!(0.0 < a && a < b)) throw std::invalid_argument("h_integral: need 0 < a < b");
  if (!(t > 0.0)) throw std::invalid_argument("h_integral: need t > 0");
  const double lo = a * t, hi = b * t;
  const double mid = 0.5 * (lo + hi);
  return simpson(&h_squared, lo, hi, h_squared(lo), h_squared(mid), h_squared(hi), 1e-8, 40);
}

AugmentedSolution build_augmented_solution(const EigenDecomposition& eig,
                                           const Eigen::VectorXd& coeffs, double mu,
                                           const std::vector<double>& s_grid) {
  const int dim = mode_count(eig, mu);
  if (coeffs.size() != dim)
    throw std::invalid_argument("coefficient vector must cover exactly the modes below mu");
  for (int j = 0; j < dim; ++j)
    if (eig.mu(j) <= 0.0)
      throw std::invalid_argument("augmented solution requires positive eigenvalues");
  AugmentedSolution out;
  const int ns = static_cast<int>(s_grid.size());
  const int nx = static_cast<int>(eig.phi.rows());
  Eigen::MatrixXd modal(ns, dim);  // coefficient of phi_j at each s
  for (int si = 0; si < ns; ++si)
    for (int j = 0; j < dim; ++j) {
      const double q = std::pow(eig.mu(j), 0.25);
      modal(si, j) = coeffs(j) * f_kernel(s_grid[static_cast<size_t>(si)] * q).f / (q * q * q);
    }
  out.u.resize(ns, nx);
  out.u.noalias() = modal * eig.phi.leftCols(dim).transpose();
  // d^3/ds^3 of mu^{-3/4} f(s mu^{1/4}) at s = 0 is f'''(0) = 1, so the third
  // derivative returns the datum exactly.
  out.ds3_at_zero = eig.phi.leftCols(dim) * coeffs;
  return out;
}

std::pair<double, double> h3_growth_check(const EigenDecomposition& eig,
                                          const Eigen::VectorXd& coeffs, double mu, double S0) {
  const int dim = mode_count(eig, mu);
  if (coeffs.size() != dim)
    throw std::invalid_argument("coefficient vector must cover exactly the modes below mu");
  if (!(S0 > 0.0)) throw std::invalid_argument("S0 must be positive");
  // lhs^2 = sum_{l<=3} int_0^{S0} sum_j mu_j^{(3-l)/2} |d_s^l c_j(s)|^2 ds,
  // with c_j(s) = coeffs_j mu_j^{-3/4} f(s mu_j^{1/4}); s-derivatives are
  // analytic through the kernel.
  const int panels = 512;
  const double ds = S0 / panels;
  double acc = 0.0;
  for (int p = 0; p <= panels; ++p) {
    const double s = p * ds;
    const double w = (p == 0 || p == panels) ? 0.5 : 1.0;  // trapezoid
    for (int j = 0; j < dim; ++j) {
      const double m = eig.mu(j);
      const double q = std::pow(m, 0.25);
      const FKernel k = f_kernel(s * q);
      const double base = coeffs(j) / (q * q * q);
      const double d[4] = {base * k.f, base * q * k.df, base * q * q * k.d2f,
                           base * q * q * q * k.d3f};
      for (int l = 0; l <= 3; ++l)
        acc += w * ds * std::pow(m, 0.5 * (3 - l)) * d[l] * d[l];
    }
  }
  const double lhs = std::sqrt(acc);
  const double ynorm = coeffs.norm();
  const double rhs_shape = mu * mu * std::exp(S0 * std::pow(mu, 0.25)) * ynorm;
  return {lhs, rhs_shape};
}

}  // namespace lslab
