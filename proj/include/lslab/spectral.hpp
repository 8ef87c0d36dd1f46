#ifndef LSLAB_SPECTRAL_HPP
#define LSLAB_SPECTRAL_HPP

#include <vector>

#include "lslab/biharmonic.hpp"

namespace lslab {

/// Characteristic function of the observation set on the grid.
struct ObservationWindow {
  std::vector<bool> mask;

  int count() const;
  double measure(double h) const { return h * count(); }
  bool full() const;
  void validate(int n) const;  // throws unless length n with >= 1 true entry

  static ObservationWindow all(int n);
  /// Marks points with a <= x_i <= b (interior coordinates of the grid).
  static ObservationWindow interval(const Grid1D& grid, double a, double b);
  /// Leftmost fraction of the domain, e.g. 0.1 for the first 10%.
  static ObservationWindow left_fraction(const Grid1D& grid, double fraction);
};

struct ObservabilityPoint {
  double mu = 0.0;       // eigenvalue threshold
  int dim = 0;           // modes with mu_j <= mu
  double K = 0.0;        // inverse square root of the smallest Gram eigenvalue
  bool singular = false;  // Gram numerically singular; K set to +inf
  Eigen::VectorXd extremal;  // coefficients of the hardest-to-observe combination
};

/// Smallest restricted singular value of the span of modes below mu:
/// G_jk = h sum_{i in omega} phi_j(i) phi_k(i), K = lambda_min(G)^{-1/2}.
ObservabilityPoint observability_constant(const EigenDecomposition& eig,
                                          const ObservationWindow& omega, double mu);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

/// Least-squares fit of log K against mu^{1/4}. Needs >= 4 points with
/// distinct mu and finite K.
ScalingFit fit_scaling(const std::vector<ObservabilityPoint>& points);

struct FKernel {
  double f = 0.0;
  double df = 0.0;
  double d2f = 0.0;
  double d3f = 0.0;
};

/// f(s) = beta sin(beta s) cosh(beta s) - beta cos(beta s) sinh(beta s),
/// beta = sqrt(2)/2; satisfies f'''' = -f with (f, f', f'', f''')(0) = (0,0,0,1).
FKernel f_kernel(double s);

/// h(t) = (e^{-t} cos(t - pi/4) - e^{t} cos(t + pi/4)) / 2; f(s) = h(beta s).
double h_form(double t);

/// integral of h(s)^2 over (a t, b t), adaptive Simpson to 1e-8 absolute.
/// Requires 0 < a < b and t > 0.
double h_integral(double a, double b, double t);

struct AugmentedSolution {
  Eigen::MatrixXd u;            // rows = s grid, columns = spatial grid
  Eigen::VectorXd ds3_at_zero;  // third s-derivative at s = 0, equals the datum y
};

/// u(s, x) = sum_j coeffs_j mu_j^{-3/4} f(s mu_j^{1/4}) phi_j(x) over modes
/// with mu_j <= mu.
AugmentedSolution build_augmented_solution(const EigenDecomposition& eig,
                                           const Eigen::VectorXd& coeffs, double mu,
                                           const std::vector<double>& s_grid);

/// Discrete H^3 surrogate of the augmented solution on (0, S0) against the
/// bound shape mu^2 e^{S0 mu^{1/4}} ||y||. Returns (lhs, rhs_shape).
std::pair<double, double> h3_growth_check(const EigenDecomposition& eig,
                                          const Eigen::VectorXd& coeffs, double mu, double S0);

}  // namespace lslab

#endif
