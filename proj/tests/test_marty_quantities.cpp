#include <doctest.h>

#include <random>

#include "marty/corpus.hpp"
#include "marty/marty_quantities.hpp"
#include "oracles.hpp"

using marty::cplx;
using marty::MartyParams;
using marty::PoleRegime;
using marty::RationalFunction;
using marty::Root;
using marty::RootList;

namespace {

RationalFunction power_pole(cplx lead, int p) {
  return RationalFunction::from_factors(lead, RootList{}, RootList({Root{0.0, p}}));
}

}  // namespace

TEST_CASE("spherical derivative matches the quotient-rule derivative") {
  const std::vector<cplx> num = oracle::from_roots({0.3, cplx{-0.2, 0.4}});
  const std::vector<cplx> den = oracle::from_roots({cplx{0.6, 0.6}});
  const RationalFunction f{marty::Polynomial(num), marty::Polynomial(den)};
  for (cplx z : {cplx{0.1, 0.1}, cplx{-0.5, 0.2}, cplx{0.9, -0.3}}) {
    const cplx fz = oracle::naive_eval(num, z) / oracle::naive_eval(den, z);
    const cplx dz = oracle::quotient_rule_derivative(num, den, 1, z);
    const double expected = std::abs(dz) / (1.0 + std::norm(fz));
    CHECK(std::abs(marty::spherical_derivative(f, z) - expected) <= 1e-12 * expected);
  }
}

TEST_CASE("spherical derivative is finite at poles and invariant under reciprocal") {
  const auto f = power_pole(1.0, 1);
  CHECK(marty::spherical_derivative(f, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  std::mt19937_64 rng(8);
  for (const auto& c : marty::circle_corpus(4, 5)) {
    const RationalFunction inv = c.f.reciprocal();
    for (cplx z : marty::random_points(rng, 20, 1.0, {}, 0.0)) {
      const double a = marty::spherical_derivative(c.f, z);
      const double b = marty::spherical_derivative(inv, z);
      CHECK(std::abs(a - b) <= 1e-10 * std::max(a, b));
    }
  }
}

TEST_CASE("pole extension trichotomy") {
  SUBCASE("(alpha-1)p > k: vanishing") {
    const auto v = marty::marty_quotient(power_pole(1.0, 3), MartyParams{1, 2.0}, 0.0);
    CHECK(v.regime == PoleRegime::vanishing);
    CHECK(v.value == 0.0);
  }
  SUBCASE("(alpha-1)p = k: |c|^(1-alpha) p(p+1)...(p+k-1)") {
    // 2/z^2 with k = 2, alpha = 2: 2^(-1) * 2 * 3 = 3
    const marty::MartyQuotient q(power_pole(2.0, 2), MartyParams{2, 2.0});
    const auto v = q(0.0);
    CHECK(v.regime == PoleRegime::equality);
    CHECK(v.value == doctest::Approx(3.0).epsilon(1e-14));
    // The extension is continuous.
    CHECK(q(cplx{1e-3, 0.0}).value == doctest::Approx(3.0).epsilon(1e-10));
  }
  SUBCASE("(alpha-1)p < k: infinite") {
    const auto v = marty::marty_quotient(power_pole(1.0, 1), MartyParams{2, 2.0}, 0.0);
    CHECK(v.regime == PoleRegime::infinite);
    CHECK(v.is_infinite());
  }
}

TEST_CASE("regular values follow the definition and survive large |f|") {
  const auto f = power_pole(1.0, 3);
  const MartyParams params{2, 1.5};
  const cplx z{0.01, 0.0};
  // f'' = 12 / z^5
  const double expected = 12.0 / std::pow(0.01, 5) / (1.0 + std::pow(1e6, 1.5));
  CHECK(marty::marty_quotient(f, params, z).value == doctest::Approx(expected).epsilon(1e-12));
  CHECK(std::isfinite(marty::marty_quotient(f, params, cplx{1e-8, 0.0}).value));
}

TEST_CASE("sup on a disk") {
  // z^4 on |z| <= 1/2 with k = 1, alpha = 2: max of 4|z|^3/(1+|z|^8) is at the rim.
  const auto f = RationalFunction::from_factors(1.0, RootList({Root{0.0, 4}}), RootList{});
  const double rim = 4.0 * 0.125 / (1.0 + std::pow(0.5, 8));
  CHECK(marty::sup_on_disk(f, MartyParams{1, 2.0}, 0.0, 0.5, 16) == doctest::Approx(rim).epsilon(1e-12));
  CHECK(std::isinf(marty::sup_on_disk(power_pole(1.0, 1), MartyParams{2, 2.0}, 0.0, 0.5, 16)));
  CHECK_THROWS_AS(marty::sup_on_disk(f, MartyParams{1, 2.0}, 0.0, 0.5, 4), marty::PreconditionError);
}

TEST_CASE("parameters are validated") {
  CHECK_THROWS_AS((MartyParams{0, 2.0}.validate()), marty::PreconditionError);
  CHECK_THROWS_AS((MartyParams{1, 0.0}.validate()), marty::PreconditionError);
}
