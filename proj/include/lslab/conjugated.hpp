#ifndef LSLAB_CONJUGATED_HPP
#define LSLAB_CONJUGATED_HPP

#include <Eigen/Dense>
#include <vector>

#include "lslab/symbol.hpp"

namespace lslab {

/// Weight data at the analysis point: the weight enters every symbol-level
/// quantity only through (tau phi_s, tau phi_xp, tau phi_d).
struct ConjugationPoint {
  double tau = 0.0;                // >= 0; tau = 0 recovers the plain symbols
  double phi_s = 0.0;              // d/ds of the weight
  std::vector<double> phi_xp{0.0};  // tangential gradient, dimension d-1
  double phi_d = 1.0;              // normal derivative, must stay positive

  double phi_xp_norm() const;
  /// mu0 = (|phi_s| + |phi_xp|) / phi_d.
  double mu0() const;
  void validate() const;  // throws unless phi_d > 0 and tau >= 0
};

/// Roots of one conjugated quadratic factor l_j(xi_d) = (xi_d + i tau phi_d)^2 + gamma_j.
struct ConjugatedRoots {
  cd gamma;
  cd alpha;     // square root of gamma, Re >= 0 branch (ties to Im > 0)
  cd pi_plus;   // -i tau phi_d + i alpha
  cd pi_minus;  // -i tau phi_d - i alpha
};

enum class CaseKind { Case1, Case2, Case3, Case4 };

struct RootConfiguration {
  CaseKind kind = CaseKind::Case1;
  int upper_count = 0;          // roots with Im >= 0 among {pi_{1,+}, pi_{2,+}}
  bool near_double = false;     // |pi_{1,+} - pi_{2,+}| < 1e-8 Lambda but the
                                // exact-degeneracy test (sigma = 0, tau phi_s = 0) fails
  std::vector<cd> upper_roots;  // sorted by ascending real part
};

struct PositivityMatrix {
  int m_plus = 0;   // number of upper roots, in {0, 1, 2}
  int m_prime = 6;  // rows, = 6 - m_plus
  Eigen::MatrixXcd entries;  // m_prime x 4
};

enum class SignChar { Less, Equal, Greater };

/// gamma_j = (-1)^j i (sigma + i tau phi_s)^2 + <xi' + i tau phi_xp, xi' + i tau phi_xp>.
cd gamma_j(int j, const ConjugationPoint& point, const TangentialFrequency& freq);

/// Same value as gamma_j, assembled term by term from the expanded form
/// r(xi') - tau^2 r(phi_xp) + 2 i tau <xi', phi_xp> + (-1)^j [i sigma^2
/// - 2 sigma tau phi_s - i (tau phi_s)^2]. Kept separate as a cross-check.
cd alpha_squared(int j, const ConjugationPoint& point, const TangentialFrequency& freq);

/// Principal square root, Re >= 0; purely imaginary results take Im > 0.
cd principal_sqrt(cd z);

ConjugatedRoots conjugated_roots(int j, const ConjugationPoint& point,
                                 const TangentialFrequency& freq);

/// Trichotomy sign of 4 x0^2 Re m - 4 x0^4 + (Im m)^2, which matches the
/// comparison of |Re sqrt(m)| against |x0|. Requires x0 != 0.
SignChar sign_char_lem1(double x0, cd m);

/// Sufficient condition (tau phi_d)^4 >= C1 |rho|^3 (tau phi_d)
/// + C2 (tau phi_d)^2 |rho|^2 + sigma^4 + (tau phi_s)^4 for Im pi_{j,+} < 0.
/// When the condition holds the direct root is checked; a contradiction throws.
bool im_pi_plus_sufficient(const ConjugationPoint& point, const TangentialFrequency& freq,
                           double C1, double C2, int j);

RootConfiguration classify_configuration(const ConjugationPoint& point,
                                         const TangentialFrequency& freq);

/// Conjugated boundary symbol value b_l(xi' + i tau phi_xp, xi_d + i tau phi_d).
cd eval_conjugated_symbol(const BoundarySymbol& b, const ConjugationPoint& point,
                          const TangentialFrequency& freq, cd xi_d);
cd eval_conjugated_symbol_derivative(const BoundarySymbol& b, const ConjugationPoint& point,
                                     const TangentialFrequency& freq, cd xi_d);

/// Case-dependent Lopatinskii determinant:
///   Case1 -> 1; Case2 -> larger-modulus boundary value at the upper root;
///   Case3 -> 2x2 determinant at the two upper roots (sorted by real part);
///   Case4 -> derivative determinant at the double root.
cd ls_conjugated_det(const BoundarySymbol& b1, const BoundarySymbol& b2,
                     const ConjugationPoint& point, const TangentialFrequency& freq);

/// gap = |i alpha_j - rho_j| + tau |phi_xp| and bound = (1 + C) mu0 |rho_j|,
/// where rho_j = i alpha_j at the zero-weight point. Requires Im pi_{j,+} >= 0.
std::pair<double, double> small_perturbation_gap(const ConjugationPoint& point,
                                                 const TangentialFrequency& freq, int j,
                                                 double C = 1.0);

PositivityMatrix build_positivity_matrix(const BoundarySymbol& b1, const BoundarySymbol& b2,
                                         const ConjugationPoint& point,
                                         const TangentialFrequency& freq, int m_plus);

int matrix_rank(const PositivityMatrix& m, double tol_factor = 1e-8);

/// Smallest eigenvalue of conj-transpose(M) * M; positive iff rank 4.
double gram_lower_bound(const PositivityMatrix& m);

}  // namespace lslab

#endif
