#include <doctest.h>

#include <cmath>

#include "marty/corpus.hpp"
#include "marty/nevanlinna.hpp"
#include "oracles.hpp"

using marty::cplx;
using marty::QuadratureSpec;
using marty::RationalFunction;
using marty::Root;
using marty::RootList;

namespace {

QuadratureSpec tight() {
  QuadratureSpec spec;
  spec.tolerance = 1e-12;
  spec.max_doublings = 20;
  return spec;
}

RationalFunction simple_pole(cplx lead, cplx at) {
  return RationalFunction::from_factors(lead, RootList{}, RootList({Root{at, 1}}));
}

}  // namespace

TEST_CASE("proximity function against the high-precision reference") {
  const auto q = marty::proximity_m_alpha(simple_pole(1.0, 0.3), 0.75, 0.1, tight());
  CHECK(std::abs(q.value - oracle::kProximity_1_over_z_minus_0_3_r075_base01) < 1e-10);
}

TEST_CASE("characteristic of 3/(z-0.2) at r = 0.6, base 0.05") {
  const auto t = marty::characteristic_T_alpha(simple_pole(3.0, 0.2), 0.6, 0.05, tight());
  CHECK(std::abs(t.m_alpha - oracle::kProximity_3_over_z_minus_0_2_r06_base005) < 1e-10);
  CHECK(std::abs(t.n_alpha - oracle::kCounting_3_over_z_minus_0_2_r06_base005) < 1e-13);
  CHECK(std::abs(t.t_alpha - oracle::kCharacteristic_3_over_z_minus_0_2_r06_base005) < 1e-10);
}

TEST_CASE("constant function") {
  const auto two = RationalFunction::constant(2.0);
  const auto t = marty::characteristic_T_alpha(two, 0.5, cplx{0.1, 0.1}, QuadratureSpec{});
  CHECK(std::abs(t.t_alpha - std::log(2.0)) < 1e-12);
  CHECK(t.n_alpha == 0.0);
  CHECK(std::abs(marty::check_first_fundamental(two, 0.5, 0.0, QuadratureSpec{})) < 1e-12);
}

TEST_CASE("Poisson kernel averages to one") {
  const cplx base{0.2, -0.3};
  double sum = 0.0;
  const int n = 2048;
  for (int i = 0; i < n; ++i) sum += marty::poisson_kernel(0.6, 2.0 * M_PI * i / n, base);
  CHECK(std::abs(sum / n - 1.0) < 1e-12);
  CHECK(marty::poisson_kernel(0.6, 1.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("counting function with base 0 reduces to log(r/|b|)") {
  const auto f = RationalFunction::from_factors(1.0, RootList{}, RootList({Root{0.2, 2}, Root{cplx{0.0, 0.7}, 1}}));
  CHECK(std::abs(marty::counting_N_alpha(f, 0.5, 0.0) - 2.0 * std::log(0.5 / 0.2)) < 1e-14);
  CHECK(marty::count_n(f, 0.5) == 2);
  CHECK(marty::count_n(f, 0.8) == 3);
}

TEST_CASE("first fundamental theorem on seeded rationals") {
  QuadratureSpec spec;
  spec.tolerance = 1e-10;
  spec.max_doublings = 20;
  for (const auto& c : marty::circle_corpus(99, 8))
    CHECK(std::abs(marty::check_first_fundamental(c.f, c.r, c.base, spec)) < 1e-8);
}

TEST_CASE("counting inequality holds on seeded configurations") {
  for (const auto& c : marty::counting_corpus(17, 30)) CHECK(marty::check_counting_inequality(c.f, c.r, c.R, c.base) >= -1e-12);
}

TEST_CASE("clearance and base-point errors") {
  const auto f = simple_pole(1.0, 0.5);
  CHECK_THROWS_AS(marty::proximity_m_alpha(f, 0.5, 0.0, QuadratureSpec{}), marty::ClearanceError);
  CHECK_THROWS_AS(marty::counting_N_alpha(f, 0.8, 0.5), marty::PreconditionError);
  CHECK_THROWS_AS(marty::characteristic_T_alpha(f, 0.3, 0.4, QuadratureSpec{}), marty::PreconditionError);
  CHECK_THROWS_AS(marty::check_counting_inequality(f, 0.6, 0.4, 0.0), marty::PreconditionError);
}
