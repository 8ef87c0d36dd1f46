#include "lslab/conjugated.hpp"

#include <algorithm>
#include <cmath>

namespace lslab {

namespace {

constexpr double kDoubleRootBand = 1e-8;

int sign_factor(int j) {
  if (j != 1 && j != 2) throw std::invalid_argument("factor index must be 1 or 2");
  return (j == 1) ? -1 : 1;
}

std::vector<cd> shifted_tangential(const ConjugationPoint& point, const TangentialFrequency& freq) {
  if (point.phi_xp.size() != freq.xi_prime.size())
    throw std::invalid_argument("phi_xp dimension does not match xi'");
  std::vector<cd> z(freq.xi_prime.size());
  for (size_t i = 0; i < z.size(); ++i)
    z[i] = cd(freq.xi_prime[i], point.tau * point.phi_xp[i]);
  return z;
}

}  // namespace

double ConjugationPoint::phi_xp_norm() const {
  double s = 0.0;
  for (double x : phi_xp) s += x * x;
  return std::sqrt(s);
}

double ConjugationPoint::mu0() const { return (std::abs(phi_s) + phi_xp_norm()) / phi_d; }

void ConjugationPoint::validate() const {
  if (!(phi_d > 0.0)) throw std::invalid_argument("phi_d must be positive");
  if (tau < 0.0) throw std::invalid_argument("tau must be nonnegative");
  if (phi_xp.empty()) throw std::invalid_argument("phi_xp must have dimension >= 1");
}

cd gamma_j(int j, const ConjugationPoint& point, const TangentialFrequency& freq) {
  point.validate();
  const int sgn = sign_factor(j);
  const cd s_shift(freq.sigma, point.tau * point.phi_s);
  const std::vector<cd> z = shifted_tangential(point, freq);
  cd quad(0.0, 0.0);
  for (const cd& zi : z) quad += zi * zi;
  return double(sgn) * cd(0.0, 1.0) * s_shift * s_shift + quad;
}

cd alpha_squared(int j, const ConjugationPoint& point, const TangentialFrequency& freq) {
  point.validate();
  const int sgn = sign_factor(j);
  const double r2 = freq.r() * freq.r();
  const double tphi = point.tau * point.phi_xp_norm();
  double cross = 0.0;
  for (size_t i = 0; i < freq.xi_prime.size(); ++i)
    cross += freq.xi_prime[i] * point.phi_xp[i];
  const double ts = point.tau * point.phi_s;
  return cd(r2 - tphi * tphi, 2.0 * point.tau * cross) +
         double(sgn) * (cd(0.0, freq.sigma * freq.sigma) - cd(2.0 * freq.sigma * ts, 0.0) -
                        cd(0.0, ts * ts));
}

cd principal_sqrt(cd z) {
  cd s = std::sqrt(z);
  if (s.real() < 0.0) s = -s;
  if (s.real() == 0.0 && s.imag() < 0.0) s = -s;
  return s;
}

ConjugatedRoots conjugated_roots(int j, const ConjugationPoint& point,
                                 const TangentialFrequency& freq) {
  ConjugatedRoots out;
  out.gamma = gamma_j(j, point, freq);
  out.alpha = principal_sqrt(out.gamma);
  const cd shift(0.0, -point.tau * point.phi_d);
  out.pi_plus = shift + cd(0.0, 1.0) * out.alpha;
  out.pi_minus = shift - cd(0.0, 1.0) * out.alpha;
  return out;
}

SignChar sign_char_lem1(double x0, cd m) {
  if (x0 == 0.0) throw std::invalid_argument("sign_char_lem1: x0 must be nonzero");
  const double v = 4.0 * x0 * x0 * m.real() - 4.0 * std::pow(x0, 4) + m.imag() * m.imag();
  if (v < 0.0) return SignChar::Less;
  if (v > 0.0) return SignChar::Greater;
  return SignChar::Equal;
}

bool im_pi_plus_sufficient(const ConjugationPoint& point, const TangentialFrequency& freq,
                           double C1, double C2, int j) {
  point.validate();
  const double lambda = freq.lambda();  // |rho_j| on either factor
  const double td = point.tau * point.phi_d;
  const double ts = point.tau * point.phi_s;
  const double s4 = std::pow(freq.sigma, 4);
  const bool holds = std::pow(td, 4) >= C1 * std::pow(lambda, 3) * td +
                                            C2 * td * td * lambda * lambda + s4 + std::pow(ts, 4);
  if (holds) {
    const ConjugatedRoots roots = conjugated_roots(j, point, freq);
    if (roots.pi_plus.imag() >= 0.0)
      throw std::logic_error("sufficient condition held but Im pi_+ >= 0");
  }
  return holds;
}

RootConfiguration classify_configuration(const ConjugationPoint& point,
                                         const TangentialFrequency& freq) {
  point.validate();
  const ConjugatedRoots r1 = conjugated_roots(1, point, freq);
  const ConjugatedRoots r2 = conjugated_roots(2, point, freq);
  RootConfiguration out;
  // phi_d > 0 keeps pi_{j,-} strictly below the real axis; only the two
  // pi_{j,+} can reach the closed upper half-plane.
  if (r1.pi_plus.imag() >= 0.0) out.upper_roots.push_back(r1.pi_plus);
  if (r2.pi_plus.imag() >= 0.0) out.upper_roots.push_back(r2.pi_plus);
  out.upper_count = static_cast<int>(out.upper_roots.size());
  std::sort(out.upper_roots.begin(), out.upper_roots.end(),
            [](cd a, cd b) { return a.real() < b.real(); });
  if (out.upper_count == 0) {
    out.kind = CaseKind::Case1;
  } else if (out.upper_count == 1) {
    out.kind = CaseKind::Case2;
  } else {
    const double gap = std::abs(r1.pi_plus - r2.pi_plus);
    if (gap < kDoubleRootBand * freq.lambda()) {
      // A true double root requires sigma = 0 and tau phi_s = 0; anything
      // else is a near-degenerate Case3.
      if (freq.sigma == 0.0 && point.tau * point.phi_s == 0.0) {
        out.kind = CaseKind::Case4;
      } else {
        out.kind = CaseKind::Case3;
        out.near_double = true;
      }
    } else {
      out.kind = CaseKind::Case3;
    }
  }
  return out;
}

cd eval_conjugated_symbol(const BoundarySymbol& b, const ConjugationPoint& point,
                          const TangentialFrequency& freq, cd xi_d) {
  const std::vector<cd> z = shifted_tangential(point, freq);
  return eval_symbol(b, z, xi_d + cd(0.0, point.tau * point.phi_d));
}

cd eval_conjugated_symbol_derivative(const BoundarySymbol& b, const ConjugationPoint& point,
                                     const TangentialFrequency& freq, cd xi_d) {
  const std::vector<cd> z = shifted_tangential(point, freq);
  return eval_symbol_derivative(b, z, xi_d + cd(0.0, point.tau * point.phi_d));
}

cd ls_conjugated_det(const BoundarySymbol& b1, const BoundarySymbol& b2,
                     const ConjugationPoint& point, const TangentialFrequency& freq) {
  const RootConfiguration cfg = classify_configuration(point, freq);
  switch (cfg.kind) {
    case CaseKind::Case1:
      return cd(1.0, 0.0);
    case CaseKind::Case2: {
      const cd root = cfg.upper_roots.front();
      const cd v1 = eval_conjugated_symbol(b1, point, freq, root);
      const cd v2 = eval_conjugated_symbol(b2, point, freq, root);
      return std::abs(v1) >= std::abs(v2) ? v1 : v2;
    }
    case CaseKind::Case3: {
      const cd p1 = cfg.upper_roots[0];
      const cd p2 = cfg.upper_roots[1];
      return eval_conjugated_symbol(b1, point, freq, p1) *
                 eval_conjugated_symbol(b2, point, freq, p2) -
             eval_conjugated_symbol(b2, point, freq, p1) *
                 eval_conjugated_symbol(b1, point, freq, p2);
    }
    case CaseKind::Case4: {
      const cd root = cfg.upper_roots.front();
      return eval_conjugated_symbol(b1, point, freq, root) *
                 eval_conjugated_symbol_derivative(b2, point, freq, root) -
             eval_conjugated_symbol(b2, point, freq, root) *
                 eval_conjugated_symbol_derivative(b1, point, freq, root);
    }
  }
  throw std::logic_error("unreachable");
}

std::pair<double, double> small_perturbation_gap(const ConjugationPoint& point,
                                                 const TangentialFrequency& freq, int j,
                                                 double C) {
  const ConjugatedRoots roots = conjugated_roots(j, point, freq);
  if (roots.pi_plus.imag() < 0.0)
    throw std::domain_error("small_perturbation_gap: Im pi_+ < 0, lemma hypothesis violated");
  // rho_j = i alpha_j with the weight switched off.
  ConjugationPoint flat = point;
  flat.tau = 0.0;
  const cd rho = cd(0.0, 1.0) * principal_sqrt(gamma_j(j, flat, freq));
  const double gap = std::abs(cd(0.0, 1.0) * roots.alpha - rho) +
                     point.tau * point.phi_xp_norm();
  const double bound = (1.0 + C) * point.mu0() * std::abs(rho);
  return {gap, bound};
}

PositivityMatrix build_positivity_matrix(const BoundarySymbol& b1, const BoundarySymbol& b2,
                                         const ConjugationPoint& point,
                                         const TangentialFrequency& freq, int m_plus) {
  if (m_plus < 0 || m_plus > 2)
    throw std::invalid_argument("m_plus must be in {0, 1, 2}");
  const RootConfiguration cfg = classify_configuration(point, freq);
  if (cfg.upper_count != m_plus)
    throw std::invalid_argument("m_plus does not match the classified configuration");

  PositivityMatrix out;
  out.m_plus = m_plus;
  out.m_prime = 6 - m_plus;
  out.entries = Eigen::MatrixXcd::Zero(out.m_prime, 4);

  // Rows 0-1: coefficients of the conjugated boundary symbols in xi_d.
  // The tau phi_d shift redistributes via the binomial theorem.
  const std::vector<cd> z = shifted_tangential(point, freq);
  const cd shift(0.0, point.tau * point.phi_d);
  const BoundarySymbol* bs[2] = {&b1, &b2};
  static const double binom[4][4] = {
      {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  for (int row = 0; row < 2; ++row) {
    const BoundarySymbol& b = *bs[row];
    for (int jdeg = 0; jdeg <= std::min(3, b.order); ++jdeg) {
      if (b.coeffs[static_cast<size_t>(jdeg)].zero()) continue;
      const cd cj = b.coeffs[static_cast<size_t>(jdeg)].eval(std::span<const cd>(z));
      cd pw(1.0, 0.0);
      for (int m = jdeg; m >= 0; --m) {
        out.entries(row, m) += binom[jdeg][m] * pw * cj;
        pw *= shift;
      }
    }
  }

  // Remaining rows: the kappa^+ coefficient vector, banded.
  std::vector<cd> kappa{cd(1.0, 0.0)};
  for (const cd& root : cfg.upper_roots) {
    std::vector<cd> next(kappa.size() + 1, cd(0.0, 0.0));
    for (size_t i = 0; i < kappa.size(); ++i) {
      next[i] += -root * kappa[i];
      next[i + 1] += kappa[i];
    }
    kappa = std::move(next);
  }
  const int band_rows = 4 - m_plus;
  for (int row = 0; row < band_rows; ++row)
    for (size_t i = 0; i < kappa.size(); ++i)
      out.entries(2 + row, row + static_cast<int>(i)) = kappa[i];
  return out;
}

int matrix_rank(const PositivityMatrix& m, double tol_factor) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m.entries);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double tol = tol_factor * sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++rank;
  return rank;
}

double gram_lower_bound(const PositivityMatrix& m) {
  const Eigen::MatrixXcd gram = m.entries.adjoint() * m.entries;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  return es.eigenvalues().minCoeff();
}

}  // namespace lslab
