#ifndef LSLAB_SYMBOL_HPP
#define LSLAB_SYMBOL_HPP

#include <array>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lslab {

using cd = std::complex<double>;

/// Tangential frequency (sigma, xi') with the flat metric |xi'|^2 = sum xi_i^2.
struct TangentialFrequency {
  double sigma = 0.0;
  std::vector<double> xi_prime;  // dimension d-1, default 1

  double r() const;
  double lambda() const;  // (sigma^4 + r^4)^{1/4}
  bool degenerate() const;

  static TangentialFrequency scalar(double sigma, double r_value) {
    return TangentialFrequency{sigma, {r_value}};
  }
};

/// The two roots of sigma^4 + (xi_d^2 + r^2)^2 with positive imaginary part.
struct AugmentedRootPair {
  cd rho1;  // negative real part
  cd rho2;  // rho2 = -conj(rho1)
  double lambda_cap = 0.0;
};

/// rho_{1,2} in closed form. Throws on the degenerate frequency (0,0).
AugmentedRootPair augmented_roots(const TangentialFrequency& freq);

/// Double root i*r of p^+(xi',xi_d) = (xi_d - i|xi'|)^2. Requires r > 0.
cd p_plus_root(const TangentialFrequency& freq);

/// Polynomial in the tangential variables with complex coefficients.
struct Monomial {
  cd coeff;
  std::vector<int> exps;  // one exponent per tangential component
};

struct TangentialPoly {
  int dim = 1;
  std::vector<Monomial> terms;

  cd eval(std::span<const cd> xi) const;
  cd eval(std::span<const double> xi) const;
  bool zero() const { return terms.empty(); }
  int total_degree() const;  // -1 if zero

  static TangentialPoly constant(int dim, cd c);
  /// c * (sum xi_i^2)^m, expanded. Covers the even isotropic terms c|xi'|^{2m}.
  static TangentialPoly isotropic(int dim, cd c, int m);
  /// <xi', w> linear form.
  static TangentialPoly linear(int dim, std::span<const cd> w);
};

/// Boundary-operator principal symbol: sum_j coeffs[j](xi') xi_d^j, with
/// coeffs[j] homogeneous of degree order - j.
struct BoundarySymbol {
  int order = 0;  // k <= 3
  int dim = 1;
  std::array<TangentialPoly, 4> coeffs;

  BoundarySymbol() = default;
  BoundarySymbol(int k, int d) : order(k), dim(d) {
    if (k < 0 || k > 3) throw std::invalid_argument("boundary symbol order must be in 0..3");
    for (auto& c : coeffs) c.dim = d;
  }

  /// Coefficient of xi_d^j; the paper's b^{k-j}.
  const TangentialPoly& coeff(int j) const { return coeffs.at(static_cast<size_t>(j)); }
  void set_coeff(int j, TangentialPoly p);
};

cd eval_symbol(const BoundarySymbol& b, std::span<const cd> xi_prime, cd xi_d);
cd eval_symbol(const BoundarySymbol& b, const TangentialFrequency& freq, cd xi_d);
cd eval_symbol_derivative(const BoundarySymbol& b, std::span<const cd> xi_prime, cd xi_d);
cd eval_symbol_derivative(const BoundarySymbol& b, const TangentialFrequency& freq, cd xi_d);

/// Checks coeffs[j](lambda xi') = lambda^{k-j} coeffs[j](xi') at `samples`
/// random (xi', lambda) pairs, within 1e-10 relative.
bool homogeneity_degree_check(const BoundarySymbol& b, int samples, unsigned seed = 12345);

/// Text round-trip. Format documented in the README; one symbol per block.
std::string serialize_symbol(const BoundarySymbol& b);
BoundarySymbol parse_symbol(const std::string& text);

// The boundary pairs used throughout as fixtures.
namespace pairs {
BoundarySymbol hinged_b1(int dim = 1);          // u        -> 1
BoundarySymbol hinged_b2(int dim = 1);          // Delta u  -> -xi_d^2
BoundarySymbol clamped_b1(int dim = 1);         // u        -> 1
BoundarySymbol clamped_b2(int dim = 1);         // d_n u    -> -i xi_d
BoundarySymbol neumann_b1(int dim = 1);         // d_n u        -> -i xi_d
BoundarySymbol neumann_b2(int dim = 1);         // d_n Delta u  -> i xi_d^3
BoundarySymbol shear_b1(int dim = 1);           // (d_n^2 + 2 Delta') u -> -xi_d^2 - 2|xi'|^2
BoundarySymbol shear_b2(int dim = 1);           // d_n^3 u -> i xi_d^3
BoundarySymbol observation_b1(double alpha, int dim = 1);  // xi_d^2 + alpha |xi'|^2
BoundarySymbol observation_b2(int dim = 1);                // xi_d
}  // namespace pairs

}  // namespace lslab

#endif
