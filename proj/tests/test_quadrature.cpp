#include <doctest.h>

#include <cmath>

#include "marty/quadrature.hpp"

using marty::cplx;
using marty::periodic_mean;
using marty::QuadratureSpec;

TEST_CASE("mean of an analytic periodic function converges geometrically") {
  // 1 / (1 - 0.5 e^{it}) has mean 1.
  auto f = [](double t) { return 1.0 / (1.0 - 0.5 * std::polar(1.0, t)); };
  QuadratureSpec spec;
  spec.initial_nodes = 8;
  spec.tolerance = 1e-14;
  const auto q = periodic_mean<cplx>(f, spec);
  CHECK(std::abs(q.value - cplx{1.0}) < 1e-14);
  // Differences shrink monotonically on a smooth integrand.
  for (std::size_t i = 1; i < q.differences.size(); ++i) CHECK(q.differences[i] <= q.differences[i - 1]);
}

TEST_CASE("trigonometric polynomials are integrated exactly once resolved") {
  auto f = [](double t) { return std::cos(t) * std::cos(t) + 0.25 * std::sin(3.0 * t); };
  const auto q = periodic_mean<double>(f, QuadratureSpec{});
  CHECK(std::abs(q.value - 0.5) < 1e-15);
  CHECK(q.nodes_used == 128);
}

TEST_CASE("results are bit-identical across runs") {
  auto f = [](double t) { return std::log(std::abs(std::polar(0.7, t) - cplx{0.3, 0.1})); };
  const auto a = periodic_mean<double>(f, QuadratureSpec{});
  const auto b = periodic_mean<double>(f, QuadratureSpec{});
  CHECK(a.value == b.value);
  CHECK(a.nodes_used == b.nodes_used);
}

TEST_CASE("doubling cap raises ConvergenceError with the best estimate") {
  auto kink = [](double t) { return std::abs(std::sin(t)); };
  QuadratureSpec spec;
  spec.initial_nodes = 4;
  spec.max_doublings = 2;
  spec.tolerance = 1e-14;
  try {
    periodic_mean<double>(kink, spec);
    FAIL("expected ConvergenceError");
  } catch (const marty::ConvergenceError& e) {
    CHECK(std::abs(e.best_estimate() - 2.0 / M_PI) < 0.1);
    CHECK(e.last_change() > 0.0);
  }
}

TEST_CASE("invalid specs are rejected") {
  QuadratureSpec spec;
  spec.initial_nodes = 0;
  CHECK_THROWS_AS(spec.validate(), marty::PreconditionError);
  spec = QuadratureSpec{};
  spec.tolerance = 0.0;
  CHECK_THROWS_AS(spec.validate(), marty::PreconditionError);
  spec = QuadratureSpec{};
  CHECK(spec.clearance(0.5) == doctest::Approx(5e-4));
}
