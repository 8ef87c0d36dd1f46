#include "lslab/ls_checker.hpp"

#include <cmath>
#include <random>

namespace lslab {

namespace {

constexpr double kDoubleRootBand = 1e-8;

// Coefficient value c[m] = b^{k-m}(xi'), the coefficient of xi_d^m.
std::array<cd, 4> coeff_values(const BoundarySymbol& b, const TangentialFrequency& freq) {
  std::vector<cd> z(freq.xi_prime.begin(), freq.xi_prime.end());
  std::array<cd, 4> c{};
  for (int j = 0; j <= std::min(3, b.order); ++j)
    if (!b.coeffs[static_cast<size_t>(j)].zero()) c[static_cast<size_t>(j)] = b.coeffs[static_cast<size_t>(j)].eval(z);
  return c;
}

}  // namespace

cd ls_det_P(const BoundarySymbol& b1, const BoundarySymbol& b2, const TangentialFrequency& freq) {
  const cd root = p_plus_root(freq);
  return eval_symbol(b1, freq, root) * eval_symbol_derivative(b2, freq, root) -
         eval_symbol(b2, freq, root) * eval_symbol_derivative(b1, freq, root);
}

cd ls_det_Q(const BoundarySymbol& b1, const BoundarySymbol& b2, const TangentialFrequency& freq) {
  if (freq.degenerate()) throw std::invalid_argument("ls_det_Q: degenerate frequency");
  if (std::abs(freq.sigma) < kDoubleRootBand * freq.lambda()) return ls_det_P(b1, b2, freq);
  const auto roots = augmented_roots(freq);
  return eval_symbol(b1, freq, roots.rho1) * eval_symbol(b2, freq, roots.rho2) -
         eval_symbol(b2, freq, roots.rho1) * eval_symbol(b1, freq, roots.rho2);
}

LSReport certify_sphere(const BoundarySymbol& b1, const BoundarySymbol& b2, LSMode mode, int n,
                        double threshold) {
  if (n < 16) throw std::invalid_argument("certify_sphere: n >= 16");
  LSReport rep;
  rep.mode = mode;
  rep.threshold = threshold;
  const int korder = b1.order + b2.order;
  const int exponent = (mode == LSMode::AugmentedQ) ? korder : korder - 1;
  (void)exponent;  // Lambda = 1 on the sampled sphere; kept for the per-sample scale
  bool first = true;
  for (int i = 0; i < n; ++i) {
    const double theta = (static_cast<double>(i) / (n - 1)) * (M_PI / 2.0);
    const double sigma = std::sqrt(std::sin(theta));
    const double r = std::sqrt(std::cos(theta));
    TangentialFrequency freq = TangentialFrequency::scalar(sigma, r);
    SphereSample s;
    s.theta = theta;
    s.sigma = sigma;
    s.r = r;
    if (mode == LSMode::StaticP) {
      if (r == 0.0) continue;  // p^+ degenerate at the sigma-axis endpoint
      s.det = ls_det_P(b1, b2, freq);
      s.normalized_abs = std::abs(s.det) / std::pow(r, korder - 1);
    } else {
      s.det = ls_det_Q(b1, b2, freq);
      // Lambda = 1 on the sphere. The roots coalesce like sigma^2 as theta -> 0,
      // so the uniform lower-bound quantity divides out the root separation;
      // in the delegated band the determinant is already the derivative form.
      if (sigma < 1e-8) {
        s.normalized_abs = std::abs(s.det);
      } else {
        const auto roots = augmented_roots(freq);
        s.normalized_abs = std::abs(s.det) / std::abs(roots.rho2 - roots.rho1);
      }
    }
    rep.table.push_back(s);
    if (first || s.normalized_abs < rep.min_normalized_det) {
      rep.min_normalized_det = s.normalized_abs;
      rep.argmin_point = freq;
      first = false;
    }
  }
  rep.samples = static_cast<int>(rep.table.size());
  rep.certified = rep.min_normalized_det > threshold;
  return rep;
}

std::vector<std::pair<double, double>> sigma_limit_consistency(
    const BoundarySymbol& b1, const BoundarySymbol& b2, double r,
    const std::vector<double>& sigma_sequence) {
  if (r <= 0.0) throw std::invalid_argument("sigma_limit_consistency: r > 0 required");
  for (size_t i = 0; i < sigma_sequence.size(); ++i) {
    if (sigma_sequence[i] <= 0.0)
      throw std::invalid_argument("sigma_limit_consistency: sigmas must be positive");
    if (i > 0 && sigma_sequence[i] >= sigma_sequence[i - 1])
      throw std::invalid_argument("sigma_limit_consistency: sigmas must be decreasing");
  }
  const TangentialFrequency base = TangentialFrequency::scalar(0.0, r);
  const cd detP = ls_det_P(b1, b2, base);
  if (detP == cd(0.0, 0.0))
    throw std::domain_error("sigma_limit_consistency: ls_det_P vanishes, gap undefined");
  std::vector<std::pair<double, double>> out;
  out.reserve(sigma_sequence.size());
  for (double sigma : sigma_sequence) {
    const TangentialFrequency freq = TangentialFrequency::scalar(sigma, r);
    const auto roots = augmented_roots(freq);
    const cd detQ = eval_symbol(b1, freq, roots.rho1) * eval_symbol(b2, freq, roots.rho2) -
                    eval_symbol(b2, freq, roots.rho1) * eval_symbol(b1, freq, roots.rho2);
    const cd gap = detQ / (roots.rho2 - roots.rho1) - detP;
    out.emplace_back(sigma, std::abs(gap) / std::abs(detP));
  }
  return out;
}

cd expand_K(const BoundarySymbol& b1, const BoundarySymbol& b2, const TangentialFrequency& freq) {
  const auto roots = augmented_roots(freq);
  const cd r1 = roots.rho1, r2 = roots.rho2;
  const auto c1 = coeff_values(b1, freq);
  const auto c2 = coeff_values(b2, freq);
  auto bracket = [&](int m, int n) { return c1[static_cast<size_t>(m)] * c2[static_cast<size_t>(n)] -
                                            c1[static_cast<size_t>(n)] * c2[static_cast<size_t>(m)]; };
  const cd sum = r1 + r2;
  const cd prod = r1 * r2;
  return (r2 - r1) * (bracket(0, 1) + bracket(0, 2) * sum + bracket(0, 3) * (r2 * r2 + prod + r1 * r1) +
                      bracket(1, 2) * prod + bracket(1, 3) * prod * sum + bracket(2, 3) * prod * prod);
}

cd expand_Kprime(const BoundarySymbol& b1, const BoundarySymbol& b2,
                 const TangentialFrequency& freq) {
  const cd rho = p_plus_root(freq);
  const auto c1 = coeff_values(b1, freq);
  const auto c2 = coeff_values(b2, freq);
  auto bracket = [&](int m, int n) { return c1[static_cast<size_t>(m)] * c2[static_cast<size_t>(n)] -
                                            c1[static_cast<size_t>(n)] * c2[static_cast<size_t>(m)]; };
  const cd rho2 = rho * rho;
  return bracket(0, 1) + 2.0 * bracket(0, 2) * rho + 3.0 * bracket(0, 3) * rho2 +
         bracket(1, 2) * rho2 + 2.0 * bracket(1, 3) * rho2 * rho + bracket(2, 3) * rho2 * rho2;
}

double perturbation_scan(const BoundarySymbol& b1, const BoundarySymbol& b2,
                         const TangentialFrequency& freq, double epsilon, int n, unsigned seed) {
  const auto roots = augmented_roots(freq);
  const double rho_min = std::min(std::abs(roots.rho1), std::abs(roots.rho2));
  if (epsilon >= rho_min)
    throw std::invalid_argument("perturbation_scan: epsilon must stay below min |rho_j|");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.0, epsilon);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  auto disk = [&]() {
    const double a = angle(rng);
    const double rr = radius(rng);
    return cd(rr * std::cos(a), rr * std::sin(a));
  };
  const int dim = b1.dim;
  double min_abs = -1.0;
  for (int k = 0; k < n; ++k) {
    const cd delta = (k == 0) ? cd(0, 0) : disk();
    const cd delta2 = (k == 0) ? cd(0, 0) : disk();
    std::vector<cd> xi(freq.xi_prime.begin(), freq.xi_prime.end());
    if (k > 0) {
      // zeta' with |zeta'| <= epsilon, spread over components
      double remaining = radius(rng);
      for (int i = 0; i < dim; ++i) {
        const double a = angle(rng);
        xi[static_cast<size_t>(i)] += cd(remaining * std::cos(a), remaining * std::sin(a)) / std::sqrt(double(dim));
      }
    }
    const cd z1 = roots.rho1 + delta;
    const cd z2 = roots.rho2 + delta2;
    const cd det = eval_symbol(b1, xi, z1) * eval_symbol(b2, xi, z2) -
                   eval_symbol(b2, xi, z1) * eval_symbol(b1, xi, z2);
    const double a = std::abs(det);
    if (min_abs < 0.0 || a < min_abs) min_abs = a;
  }
  return min_abs;
}

}  // namespace lslab
