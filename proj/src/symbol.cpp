#include "lslab/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace lslab {

double TangentialFrequency::r() const {
  double s = 0.0;
  for (double x : xi_prime) s += x * x;
  return std::sqrt(s);
}

double TangentialFrequency::lambda() const {
  const double rr = r();
  return std::pow(sigma * sigma * sigma * sigma + rr * rr * rr * rr, 0.25);
}

bool TangentialFrequency::degenerate() const { return sigma == 0.0 && r() == 0.0; }

AugmentedRootPair augmented_roots(const TangentialFrequency& freq) {
  if (freq.degenerate())
    throw std::invalid_argument("augmented_roots: degenerate frequency (sigma, xi') = (0, 0)");
  const double s = freq.sigma;
  const double r = freq.r();
  const double s4 = s * s * s * s;
  const double r2 = r * r;
  const double outer = std::sqrt(s4 + r2 * r2);
  // outer - r^2 = s^4 / (outer + r^2): avoids cancellation for small sigma.
  const double re = std::sqrt(s4 / (outer + r2) / 2.0);
  const double im = std::sqrt((outer + r2) / 2.0);
  AugmentedRootPair out;
  out.rho1 = cd(-re, im);
  out.rho2 = cd(re, im);
  out.lambda_cap = std::sqrt(outer);
  return out;
}

cd p_plus_root(const TangentialFrequency& freq) {
  const double r = freq.r();
  if (r <= 0.0) throw std::invalid_argument("p_plus_root: requires |xi'| > 0");
  return cd(0.0, r);
}

namespace {

cd pow_int(cd z, int n) {
  cd out(1.0, 0.0);
  for (int i = 0; i < n; ++i) out *= z;
  return out;
}

}  // namespace

cd TangentialPoly::eval(std::span<const cd> xi) const {
  if (static_cast<int>(xi.size()) != dim)
    throw std::invalid_argument("tangential evaluation point has wrong dimension");
  cd out(0.0, 0.0);
  for (const auto& m : terms) {
    cd v = m.coeff;
    for (int i = 0; i < dim; ++i) v *= pow_int(xi[static_cast<size_t>(i)], m.exps[static_cast<size_t>(i)]);
    out += v;
  }
  return out;
}

cd TangentialPoly::eval(std::span<const double> xi) const {
  std::vector<cd> z(xi.begin(), xi.end());
  return eval(std::span<const cd>(z));
}

int TangentialPoly::total_degree() const {
  int deg = -1;
  for (const auto& m : terms)
    deg = std::max(deg, std::accumulate(m.exps.begin(), m.exps.end(), 0));
  return deg;
}

TangentialPoly TangentialPoly::constant(int dim, cd c) {
  TangentialPoly p;
  p.dim = dim;
  if (c != cd(0.0, 0.0)) p.terms.push_back({c, std::vector<int>(static_cast<size_t>(dim), 0)});
  return p;
}

TangentialPoly TangentialPoly::isotropic(int dim, cd c, int m) {
  // Expand c * (sum_i xi_i^2)^m by repeated multiplication.
  TangentialPoly p = constant(dim, c);
  for (int rep = 0; rep < m; ++rep) {
    TangentialPoly q;
    q.dim = dim;
    for (const auto& t : p.terms) {
      for (int i = 0; i < dim; ++i) {
        Monomial mm = t;
        mm.exps[static_cast<size_t>(i)] += 2;
        q.terms.push_back(std::move(mm));
      }
    }
    // merge duplicates
    TangentialPoly merged;
    merged.dim = dim;
    for (auto& t : q.terms) {
      bool found = false;
      for (auto& u : merged.terms) {
        if (u.exps == t.exps) {
          u.coeff += t.coeff;
          found = true;
          break;
        }
      }
      if (!found) merged.terms.push_back(std::move(t));
    }
    p = std::move(merged);
  }
  return p;
}

TangentialPoly TangentialPoly::linear(int dim, std::span<const cd> w) {
  if (static_cast<int>(w.size()) != dim) throw std::invalid_argument("linear form dimension mismatch");
  TangentialPoly p;
  p.dim = dim;
  for (int i = 0; i < dim; ++i) {
    if (w[static_cast<size_t>(i)] == cd(0.0, 0.0)) continue;
    std::vector<int> e(static_cast<size_t>(dim), 0);
    e[static_cast<size_t>(i)] = 1;
    p.terms.push_back({w[static_cast<size_t>(i)], std::move(e)});
  }
  return p;
}

void BoundarySymbol::set_coeff(int j, TangentialPoly p) {
  if (j < 0 || j > std::min(3, order))
    throw std::invalid_argument("coefficient index out of range for symbol order");
  if (p.dim != dim) throw std::invalid_argument("coefficient dimension mismatch");
  const int want = order - j;
  if (!p.zero() && p.total_degree() != want)
    throw std::invalid_argument("coefficient of xi_d^" + std::to_string(j) +
                                " must be homogeneous of degree " + std::to_string(want));
  coeffs[static_cast<size_t>(j)] = std::move(p);
}

cd eval_symbol(const BoundarySymbol& b, std::span<const cd> xi_prime, cd xi_d) {
  cd out(0.0, 0.0);
  cd pw(1.0, 0.0);
  for (int j = 0; j <= std::min(3, b.order); ++j) {
    if (!b.coeffs[static_cast<size_t>(j)].zero()) out += b.coeffs[static_cast<size_t>(j)].eval(xi_prime) * pw;
    pw *= xi_d;
  }
  return out;
}

cd eval_symbol(const BoundarySymbol& b, const TangentialFrequency& freq, cd xi_d) {
  std::vector<cd> z(freq.xi_prime.begin(), freq.xi_prime.end());
  return eval_symbol(b, z, xi_d);
}

cd eval_symbol_derivative(const BoundarySymbol& b, std::span<const cd> xi_prime, cd xi_d) {
  cd out(0.0, 0.0);
  cd pw(1.0, 0.0);
  for (int j = 1; j <= std::min(3, b.order); ++j) {
    if (!b.coeffs[static_cast<size_t>(j)].zero())
      out += static_cast<double>(j) * b.coeffs[static_cast<size_t>(j)].eval(xi_prime) * pw;
    pw *= xi_d;
  }
  return out;
}

cd eval_symbol_derivative(const BoundarySymbol& b, const TangentialFrequency& freq, cd xi_d) {
  std::vector<cd> z(freq.xi_prime.begin(), freq.xi_prime.end());
  return eval_symbol_derivative(b, z, xi_d);
}

bool homogeneity_degree_check(const BoundarySymbol& b, int samples, unsigned seed) {
  if (samples < 1) throw std::invalid_argument("homogeneity_degree_check: samples >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> scale(0.3, 3.0);
  for (int s = 0; s < samples; ++s) {
    std::vector<cd> xi(static_cast<size_t>(b.dim));
    for (auto& x : xi) x = cd(unit(rng) + 1.1, 0.0);  // keep away from zero
    const double lam = scale(rng);
    std::vector<cd> scaled(xi);
    for (auto& x : scaled) x *= lam;
    for (int j = 0; j <= std::min(3, b.order); ++j) {
      const auto& c = b.coeffs[static_cast<size_t>(j)];
      if (c.zero()) continue;
      const cd v = c.eval(xi);
      const cd vs = c.eval(scaled);
      const cd want = std::pow(lam, b.order - j) * v;
      const double ref = std::max(std::abs(want), 1e-300);
      if (std::abs(vs - want) > 1e-10 * ref) return false;
    }
  }
  return true;
}

std::string serialize_symbol(const BoundarySymbol& b) {
  std::ostringstream os;
  os.precision(17);
  os << "symbol order=" << b.order << " dim=" << b.dim << "\n";
  for (int j = 0; j <= std::min(3, b.order); ++j) {
    for (const auto& m : b.coeffs[static_cast<size_t>(j)].terms) {
      os << "term j=" << j << " c=(" << m.coeff.real() << "," << m.coeff.imag() << ") e=";
      for (size_t i = 0; i < m.exps.size(); ++i) os << (i ? "," : "") << m.exps[i];
      os << "\n";
    }
  }
  return os.str();
}

BoundarySymbol parse_symbol(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  BoundarySymbol b;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "symbol") {
      int order = -1, dim = -1;
      std::string kv;
      while (ls >> kv) {
        if (kv.rfind("order=", 0) == 0) order = std::stoi(kv.substr(6));
        else if (kv.rfind("dim=", 0) == 0) dim = std::stoi(kv.substr(4));
        else throw std::invalid_argument("parse_symbol: unknown header field '" + kv + "'");
      }
      if (order < 0 || order > 3 || dim < 1)
        throw std::invalid_argument("parse_symbol: bad header");
      b = BoundarySymbol(order, dim);
      have_header = true;
    } else if (tag == "term") {
      if (!have_header) throw std::invalid_argument("parse_symbol: term before header");
      int j = -1;
      cd c;
      std::vector<int> exps;
      std::string kv;
      while (ls >> kv) {
        if (kv.rfind("j=", 0) == 0) {
          j = std::stoi(kv.substr(2));
        } else if (kv.rfind("c=(", 0) == 0) {
          const auto comma = kv.find(',');
          const auto close = kv.find(')');
          if (comma == std::string::npos || close == std::string::npos)
            throw std::invalid_argument("parse_symbol: bad coefficient '" + kv + "'");
          c = cd(std::stod(kv.substr(3, comma - 3)), std::stod(kv.substr(comma + 1, close - comma - 1)));
        } else if (kv.rfind("e=", 0) == 0) {
          std::istringstream es(kv.substr(2));
          std::string tok;
          while (std::getline(es, tok, ',')) exps.push_back(std::stoi(tok));
        } else {
          throw std::invalid_argument("parse_symbol: unknown term field '" + kv + "'");
        }
      }
      if (j < 0 || static_cast<int>(exps.size()) != b.dim)
        throw std::invalid_argument("parse_symbol: malformed term");
      auto poly = b.coeffs[static_cast<size_t>(j)];
      poly.dim = b.dim;
      poly.terms.push_back({c, std::move(exps)});
      b.set_coeff(j, std::move(poly));
    } else {
      throw std::invalid_argument("parse_symbol: unknown line tag '" + tag + "'");
    }
  }
  if (!have_header) throw std::invalid_argument("parse_symbol: empty input");
  return b;
}

namespace pairs {

BoundarySymbol hinged_b1(int dim) {
  BoundarySymbol b(0, dim);
  b.set_coeff(0, TangentialPoly::constant(dim, cd(1.0, 0.0)));
  return b;
}

BoundarySymbol hinged_b2(int dim) {
  BoundarySymbol b(2, dim);
  b.set_coeff(2, TangentialPoly::constant(dim, cd(-1.0, 0.0)));
  return b;
}

BoundarySymbol clamped_b1(int dim) { return hinged_b1(dim); }

BoundarySymbol clamped_b2(int dim) {
  BoundarySymbol b(1, dim);
  b.set_coeff(1, TangentialPoly::constant(dim, cd(0.0, -1.0)));
  return b;
}

BoundarySymbol neumann_b1(int dim) { return clamped_b2(dim); }

BoundarySymbol neumann_b2(int dim) {
  BoundarySymbol b(3, dim);
  b.set_coeff(3, TangentialPoly::constant(dim, cd(0.0, 1.0)));
  return b;
}

BoundarySymbol shear_b1(int dim) {
  BoundarySymbol b(2, dim);
  b.set_coeff(2, TangentialPoly::constant(dim, cd(-1.0, 0.0)));
  b.set_coeff(0, TangentialPoly::isotropic(dim, cd(-2.0, 0.0), 1));
  return b;
}

BoundarySymbol shear_b2(int dim) { return neumann_b2(dim); }

BoundarySymbol observation_b1(double alpha, int dim) {
  BoundarySymbol b(2, dim);
  b.set_coeff(2, TangentialPoly::constant(dim, cd(1.0, 0.0)));
  if (alpha != 0.0) b.set_coeff(0, TangentialPoly::isotropic(dim, cd(alpha, 0.0), 1));
  return b;
}

BoundarySymbol observation_b2(int dim) {
  BoundarySymbol b(1, dim);
  b.set_coeff(1, TangentialPoly::constant(dim, cd(1.0, 0.0)));
  return b;
}

}  // namespace pairs

}  // namespace lslab
