#include <doctest.h>

#include <random>

#include "marty/polynomial.hpp"
#include "oracles.hpp"

using marty::cplx;
using marty::Polynomial;

namespace {

std::vector<cplx> random_coeffs(std::mt19937_64& rng, int degree) {
  std::normal_distribution<double> d;
  std::vector<cplx> c;
  for (int i = 0; i <= degree; ++i) c.emplace_back(d(rng), d(rng));
  return c;
}

}  // namespace

TEST_CASE("zero polynomial has degree -1 and trailing zeros are trimmed") {
  CHECK(Polynomial{}.degree() == -1);
  CHECK(Polynomial({1.0, 2.0, 0.0, 0.0}).degree() == 1);
  CHECK(Polynomial({0.0, 0.0}).is_zero());
}

TEST_CASE("Horner evaluation agrees with term-by-term evaluation") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = random_coeffs(rng, trial % 9);
    const Polynomial p(c);
    const cplx z{0.3 * trial / 50.0 - 0.7, 0.9 - 0.02 * trial};
    CHECK(std::abs(p(z) - oracle::naive_eval(c, z)) <= 1e-13 * p.evaluation_scale(z));
  }
}

TEST_CASE("derivative and product follow the coefficient rules") {
  std::mt19937_64 rng(12);
  const auto a = random_coeffs(rng, 4);
  const auto b = random_coeffs(rng, 3);
  const Polynomial pa(a), pb(b);
  const Polynomial prod = pa * pb;
  const auto expected = oracle::naive_mul(a, b);
  REQUIRE(prod.degree() == 7);
  for (int i = 0; i <= 7; ++i) CHECK(std::abs(prod[i] - expected[static_cast<std::size_t>(i)]) < 1e-13);

  const auto d2 = oracle::naive_derivative(oracle::naive_derivative(a));
  const Polynomial pd2 = pa.derivative(2);
  for (int i = 0; i <= pd2.degree(); ++i) CHECK(std::abs(pd2[i] - d2[static_cast<std::size_t>(i)]) < 1e-12);
  CHECK(pa.derivative(5).is_zero());
}

TEST_CASE("deflation by an exact root leaves no remainder") {
  const Polynomial p = Polynomial::linear_factor(0.5) * Polynomial::linear_factor(cplx{0.0, 2.0});
  const auto [q, rem] = p.deflate(0.5);
  CHECK(std::abs(rem) < 1e-15);
  CHECK(q == Polynomial::linear_factor(cplx{0.0, 2.0}));
}

TEST_CASE("Taylor coefficients reproduce the polynomial about a shifted center") {
  const Polynomial p({1.0, -2.0, 0.0, 3.0});
  const cplx c{0.4, -0.1};
  const auto t = p.taylor_coefficients(c);
  const cplx z{-0.3, 0.8};
  cplx acc{};
  for (std::size_t j = 0; j < t.size(); ++j) acc += t[j] * std::pow(z - c, static_cast<int>(j));
  CHECK(std::abs(acc - p(z)) < 1e-13);
}

TEST_CASE("low-order zeros and shifting") {
  const Polynomial p({0.0, 0.0, 2.0, 1.0});
  CHECK(p.low_order_zeros() == 2);
  CHECK(p.shift_down(2) == Polynomial({2.0, 1.0}));
  CHECK(Polynomial::monomial(2.0, 3)(cplx{0.5}) == cplx{0.25});
}
