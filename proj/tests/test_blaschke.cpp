#include <doctest.h>

#include <cmath>

#include "marty/blaschke.hpp"
#include "marty/corpus.hpp"
#include "oracles.hpp"

using marty::BlaschkeFactor;
using marty::cplx;
using marty::DiskGeometry;
using marty::RationalFunction;
using marty::Root;
using marty::RootList;

namespace {

double boundary_deviation(const RationalFunction& b, double s) {
  double worst = 0.0;
  for (int i = 0; i < 256; ++i) worst = std::max(worst, std::abs(std::abs(b(std::polar(s, 2.0 * M_PI * i / 256)).value()) - 1.0));
  return worst;
}

}  // namespace

TEST_CASE("single factor value") {
  const BlaschkeFactor g{0.3, 0.6, 1};
  CHECK(std::abs(g.eval(0.5).value() - cplx{1.75}) < 1e-14);
  CHECK(g.eval(0.3).is_pole());
  CHECK(std::abs(g.to_rational()(0.5).value() - cplx{1.75}) < 1e-14);
}

TEST_CASE("products are unimodular on |z| = s") {
  const double s = 0.55;
  std::vector<BlaschkeFactor> fs{{cplx{0.1, 0.2}, s, 2}, {cplx{-0.4, 0.0}, s, 1}, {0.0, s, 3}};
  CHECK(boundary_deviation(marty::blaschke_product(fs), s) < 1e-12);
}

TEST_CASE("split: |h| = |g| on |z| = s and h is zero-free inside") {
  const DiskGeometry geom(0.3, 0.7);
  const auto g = RationalFunction::from_factors(0.2, RootList({Root{cplx{0.1, 0.1}, 2}, Root{0.8, 1}}), RootList({Root{2.0, 1}}));
  const auto split = marty::build_split(g, geom);
  REQUIRE(split.factors.size() == 1);
  for (const auto& a : split.h.zeros()) CHECK(std::abs(a.location) > geom.s());
  for (int i = 0; i < 64; ++i) {
    const cplx w = std::polar(geom.s(), 2.0 * M_PI * i / 64);
    CHECK(std::abs(std::abs(split.h(w).value()) - std::abs(g(w).value())) < 1e-13);
  }
}

TEST_CASE("split preconditions") {
  const DiskGeometry geom(0.3, 0.7);
  const auto pole_inside = RationalFunction::from_factors(1.0, RootList{}, RootList({Root{0.6, 1}}));
  CHECK_THROWS_AS(marty::build_split(pole_inside, geom), marty::PreconditionError);
  const auto on_circle = RationalFunction::from_factors(1.0, RootList({Root{geom.s(), 1}}), RootList{});
  CHECK_THROWS_AS(marty::build_split(on_circle, geom), marty::ClearanceError);
  CHECK_THROWS_AS(DiskGeometry(0.5, 0.4), marty::PreconditionError);
}

TEST_CASE("closed-form factor log-derivative matches rational calculus") {
  const BlaschkeFactor f{cplx{0.2, -0.1}, 0.5, 1};
  const RationalFunction g = f.to_rational();
  const RationalFunction logd = g.derivative() / g;
  for (int k = 1; k <= 4; ++k) {
    const cplx z{0.05, 0.3};
    const cplx exact = logd.derivative(k - 1)(z).value();
    CHECK(std::abs(marty::factor_log_derivative(f, k, z).value() - exact) <= 1e-11 * std::abs(exact));
  }
}

TEST_CASE("Poisson representation for h = z - 2 at 0 with k = 1 gives -1/2") {
  const DiskGeometry geom(0.2, 0.8);
  const auto g = RationalFunction::polynomial(marty::Polynomial({-2.0, 1.0}));
  const auto split = marty::build_split(g, geom);
  marty::QuadratureSpec spec;
  spec.tolerance = 1e-14;
  const auto p = marty::poisson_log_derivative(split, 1, 0.0, spec);
  CHECK(std::abs(p.quadrature - cplx{-0.5}) < 1e-13);
  CHECK(std::abs(p.exact - cplx{-0.5}) < 1e-15);
}

TEST_CASE("Poisson bound dominates the exact log-derivative on zero-free corpus functions") {
  marty::QuadratureSpec spec;
  spec.tolerance = 1e-12;
  spec.max_doublings = 20;
  std::mt19937_64 rng(2);
  for (const auto& c : marty::zero_free_corpus(31, 6)) {
    const auto split = marty::build_split(c.g, c.geom);
    const double bound = marty::poisson_bound(c.k, c.geom, std::abs(split.h(0.0).value()));
    for (cplx z : marty::random_points(rng, 4, c.geom.r(), {}, 0.0)) {
      const auto p = marty::poisson_log_derivative(split, c.k, z, spec);
      CHECK(std::abs(p.quadrature - p.exact) <= 1e-6 * std::abs(p.exact) + 1e-12 * bound);
      CHECK(std::abs(p.exact) <= bound);
    }
  }
}

TEST_CASE("nearest-zero reduction") {
  const DiskGeometry geom(0.3, 0.7);
  const auto g = RationalFunction::from_factors(1e-3, RootList({Root{0.1, 3}, Root{cplx{-0.2, 0.2}, 2}}), RootList{});
  const auto split = marty::build_split(g, geom);
  const cplx z0{0.15, 0.0};
  const auto red = marty::nearest_zero_reduction(split, geom, z0, 2);
  CHECK(std::abs(split.factors[red.nearest].a - cplx{0.1}) < 1e-12);
  // g_* = g G^m and |g_*| = |g| on |z| = s.
  for (int i = 0; i < 16; ++i) {
    const cplx w = std::polar(geom.s(), 2.0 * M_PI * i / 16);
    CHECK(std::abs(std::abs(red.g_star(w).value()) - std::abs(g(w).value())) < 1e-15);
  }
  CHECK(red.abs_b_star_at_z0 >= 1.0);
  CHECK_THROWS_AS(marty::nearest_zero_reduction(split, geom, z0, 3), marty::MultiplicityError);
  CHECK_THROWS_AS(marty::nearest_zero_reduction(split, geom, cplx{0.1}, 1), marty::PreconditionError);
}

TEST_CASE("x0 threshold closed form") {
  const DiskGeometry geom(0.3, 0.5);  // s - r = 0.1
  CHECK(marty::x0_threshold(1, 1, geom) == doctest::Approx(oracle::kX0_k1_m1_gap01).epsilon(1e-15));
  // With (s-r)^2 >= 2/k the exponent vanishes and the 1/e cap binds.
  const DiskGeometry wide(0.05, 0.95);
  CHECK(marty::x0_threshold(8, 2, wide) == doctest::Approx(std::exp(-1.0)));
  for (int k = 1; k <= 3; ++k)
    for (int m = 1; m <= 3; ++m) {
      const double x0 = marty::x0_threshold(k, m, geom);
      CHECK(std::abs(x0 - oracle::monotonicity_threshold(k, m, geom.gap())) <= 1e-8 * x0);
    }
}

TEST_CASE("H(x, y) is non-increasing in y >= 1 below x0") {
  const DiskGeometry geom(0.3, 0.6);
  const int k = 2, m = 2;
  const double x0 = marty::x0_threshold(k, m, geom);
  for (double x : {x0, 0.5 * x0, 1e-3 * x0}) {
    double prev = marty::h_function(x, 1.0, k, m, geom);
    for (double y = 1.01; y < 1e6; y *= 1.3) {
      const double cur = marty::h_function(x, y, k, m, geom);
      CHECK(cur <= prev * (1.0 + 1e-12));
      prev = cur;
    }
  }
}
