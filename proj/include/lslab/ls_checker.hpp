#ifndef LSLAB_LS_CHECKER_HPP
#define LSLAB_LS_CHECKER_HPP

#include <vector>

#include "lslab/symbol.hpp"

namespace lslab {

enum class LSMode { StaticP, AugmentedQ };

struct SphereSample {
  double theta = 0.0;
  double sigma = 0.0;
  double r = 0.0;
  cd det;
  double normalized_abs = 0.0;
};

struct LSReport {
  LSMode mode = LSMode::AugmentedQ;
  double min_normalized_det = 0.0;
  TangentialFrequency argmin_point;
  bool certified = false;
  int samples = 0;
  double threshold = 0.0;
  std::vector<SphereSample> table;
};

/// Determinant of [[b1, b2], [d b1, d b2]] at xi_d = i|xi'|. Requires r > 0.
cd ls_det_P(const BoundarySymbol& b1, const BoundarySymbol& b2, const TangentialFrequency& freq);

/// Determinant of [[b1(rho1), b2(rho1)], [b1(rho2), b2(rho2)]]. For sigma in
/// the near-double-root band (|sigma| < 1e-8 Lambda) delegates to the
/// derivative form, i.e. ls_det_P.
cd ls_det_Q(const BoundarySymbol& b1, const BoundarySymbol& b2, const TangentialFrequency& freq);

/// Scans the quartic sphere sigma^4 + r^4 = 1, sigma >= 0, on a uniform
/// theta grid with sigma^2 = sin(theta), r^2 = cos(theta).
LSReport certify_sphere(const BoundarySymbol& b1, const BoundarySymbol& b2, LSMode mode, int n,
                        double threshold = 1e-6);

/// Per-sigma relative gap |ls_det_Q / (rho2 - rho1) - ls_det_P| / |ls_det_P|.
std::vector<std::pair<double, double>> sigma_limit_consistency(
    const BoundarySymbol& b1, const BoundarySymbol& b2, double r,
    const std::vector<double>& sigma_sequence);

/// Six-term multilinear expansions of the determinants in the b^{k-m}
/// coefficients and symmetric functions of the roots.
cd expand_K(const BoundarySymbol& b1, const BoundarySymbol& b2, const TangentialFrequency& freq);
cd expand_Kprime(const BoundarySymbol& b1, const BoundarySymbol& b2, const TangentialFrequency& freq);

/// Minimum |det| over n random shifts of the roots (by delta, delta~) and of
/// xi' (by zeta'), all of magnitude <= epsilon.
double perturbation_scan(const BoundarySymbol& b1, const BoundarySymbol& b2,
                         const TangentialFrequency& freq, double epsilon, int n,
                         unsigned seed = 2024);

}  // namespace lslab

#endif
