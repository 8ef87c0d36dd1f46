#include <doctest.h>

#include <random>

#include "lslab/symbol.hpp"

using namespace lslab;

namespace {
const cd I(0.0, 1.0);
}

TEST_CASE("augmented roots solve the quartic") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.05, 3.0);
  for (int k = 0; k < 10000; ++k) {
    const TangentialFrequency freq = TangentialFrequency::scalar(u(rng), u(rng));
    const auto roots = augmented_roots(freq);
    const double s4 = std::pow(freq.sigma, 4);
    const double r2 = freq.r() * freq.r();
    const double scale = std::pow(freq.lambda(), 4);
    for (cd rho : {roots.rho1, roots.rho2}) {
      const cd q = s4 + (rho * rho + r2) * (rho * rho + r2);
      CHECK(std::abs(q) <= 1e-10 * scale);
      CHECK(rho.imag() > 0.0);
    }
    CHECK(std::abs(roots.rho1 + std::conj(roots.rho2)) <= 1e-14 * freq.lambda());
    CHECK(std::abs(std::abs(roots.rho1) - freq.lambda()) <= 1e-12 * freq.lambda());
  }
}

TEST_CASE("augmented roots, pure sigma axis") {
  const auto roots = augmented_roots(TangentialFrequency::scalar(1.0, 0.0));
  // sigma^4 + xi_d^4 = 0: upper roots at angle 3pi/4 and pi/4
  CHECK(roots.rho1.real() == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-14));
  CHECK(roots.rho1.imag() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(roots.rho2.real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
}

TEST_CASE("augmented roots remain stable for tiny sigma") {
  const auto roots = augmented_roots(TangentialFrequency::scalar(1e-9, 1.0));
  // Re rho = sigma^2 / (2 r) to leading order
  CHECK(roots.rho2.real() == doctest::Approx(0.5e-18).epsilon(1e-6));
  CHECK(roots.rho2.imag() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("degenerate frequency rejected") {
  CHECK_THROWS_AS(augmented_roots(TangentialFrequency::scalar(0.0, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(p_plus_root(TangentialFrequency::scalar(1.0, 0.0)), std::invalid_argument);
  CHECK(p_plus_root(TangentialFrequency::scalar(0.0, 2.0)) == cd(0.0, 2.0));
}

TEST_CASE("boundary symbol evaluation fixtures") {
  const TangentialFrequency freq = TangentialFrequency::scalar(0.7, 1.3);
  const cd xd(0.4, 1.1);
  CHECK(eval_symbol(pairs::hinged_b1(), freq, xd) == cd(1.0, 0.0));
  CHECK(std::abs(eval_symbol(pairs::hinged_b2(), freq, xd) + xd * xd) < 1e-15);
  CHECK(std::abs(eval_symbol(pairs::clamped_b2(), freq, xd) + I * xd) < 1e-15);
  CHECK(std::abs(eval_symbol(pairs::neumann_b2(), freq, xd) - I * xd * xd * xd) < 1e-15);
  const double r2 = freq.r() * freq.r();
  CHECK(std::abs(eval_symbol(pairs::shear_b1(), freq, xd) + (xd * xd + 2.0 * r2)) < 1e-14);
  CHECK(std::abs(eval_symbol(pairs::observation_b1(-2.0), freq, xd) - (xd * xd - 2.0 * r2)) <
        1e-14);
}

TEST_CASE("symbol derivative matches finite differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const BoundarySymbol symbols[] = {pairs::hinged_b2(), pairs::clamped_b2(), pairs::neumann_b2(),
                                    pairs::shear_b1(), pairs::observation_b1(-2.0)};
  for (const auto& b : symbols) {
    for (int k = 0; k < 50; ++k) {
      const TangentialFrequency freq = TangentialFrequency::scalar(u(rng), u(rng) + 2.5);
      const cd xd(u(rng), u(rng));
      const double h = 1e-6;
      const cd fd = (eval_symbol(b, freq, xd + h) - eval_symbol(b, freq, xd - h)) / (2.0 * h);
      CHECK(std::abs(eval_symbol_derivative(b, freq, xd) - fd) < 1e-6);
    }
  }
}

TEST_CASE("coefficient homogeneity enforced and checked") {
  BoundarySymbol b(2, 1);
  CHECK_THROWS_AS(b.set_coeff(0, TangentialPoly::constant(1, cd(1.0, 0.0))),
                  std::invalid_argument);  // degree 0, needs 2
  b.set_coeff(0, TangentialPoly::isotropic(1, cd(3.0, 0.0), 1));
  b.set_coeff(2, TangentialPoly::constant(1, cd(0.0, -1.0)));
  CHECK(homogeneity_degree_check(b, 200));
  for (const auto& preset :
       {pairs::hinged_b2(3), pairs::clamped_b2(2), pairs::shear_b1(4), pairs::neumann_b2(2)})
    CHECK(homogeneity_degree_check(preset, 100));
}

TEST_CASE("isotropic polynomial expands |xi'|^2m in any dimension") {
  const TangentialPoly p = TangentialPoly::isotropic(3, cd(2.0, 0.0), 2);
  std::vector<cd> xi{cd(1.0, 0.0), cd(-2.0, 0.0), cd(0.5, 0.0)};
  const double n2 = 1.0 + 4.0 + 0.25;
  CHECK(std::abs(p.eval(std::span<const cd>(xi)) - 2.0 * n2 * n2) < 1e-12);
}

TEST_CASE("symbol text round trip") {
  const BoundarySymbol symbols[] = {pairs::hinged_b1(), pairs::clamped_b2(), pairs::neumann_b2(),
                                    pairs::shear_b1(2), pairs::observation_b1(-2.0, 3)};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (const auto& b : symbols) {
    const BoundarySymbol back = parse_symbol(serialize_symbol(b));
    CHECK(back.order == b.order);
    CHECK(back.dim == b.dim);
    for (int k = 0; k < 20; ++k) {
      std::vector<cd> xi(static_cast<size_t>(b.dim));
      for (auto& x : xi) x = cd(u(rng), u(rng));
      const cd xd(u(rng), u(rng));
      CHECK(std::abs(eval_symbol(b, xi, xd) - eval_symbol(back, xi, xd)) < 1e-12);
    }
  }
}

TEST_CASE("symbol parser rejects malformed input") {
  CHECK_THROWS_AS(parse_symbol(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_symbol("term j=0 c=(1,0) e=0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_symbol("symbol order=5 dim=1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_symbol("symbol order=2 dim=1\nterm j=0 c=(1,0) e=0,0"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_symbol("symbol order=2 dim=1\nbogus"), std::invalid_argument);
  // comments and blank lines are allowed
  const BoundarySymbol b = parse_symbol("# hinged trace\nsymbol order=0 dim=1\nterm j=0 c=(1,0) e=0\n");
  CHECK(b.order == 0);
}
