#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "marty/blaschke.hpp"
#include "marty/rational.hpp"

namespace marty {

// Seeded test corpora. Every generator is a pure function of its seed.

/// A reduced rational with an evaluation circle |z| = r and base point.
struct CircleCase {
  RationalFunction f;
  double r = 0.5;
  cplx base{};
};

/// Reduced rationals of numerator and denominator degree <= 5, zeros and
/// poles in |z| < 1.5, each at least `clearance` from |z| = r, from the base
/// point and from one another.
std::vector<CircleCase> circle_corpus(std::uint64_t seed, int count, double clearance = 0.05);

struct CountingCase {
  RationalFunction f;
  double r = 0.5;
  double R = 0.8;
  cplx base{};
};

/// 1/prod (z - b_j)^(mu_j) with one to three poles in |z| < R, mu_j <= 3,
/// |base| < r < R < 1, poles clear of both circles and the base point.
std::vector<CountingCase> counting_corpus(std::uint64_t seed, int count, double clearance = 0.02);

struct EstimateCase {
  RationalFunction g;
  int k = 1;
  int m = 1;
  DiskGeometry geom{0.3, 0.7};
};

/// Polynomials prod (z - a_j)^(m_j) with m_j in {m, m+1}, one to three zeros
/// in |z| < 0.95 clear of |z| = s, rescaled so that max |g| on |z| = 1 is a
/// random fraction in [0.2, 1] of x0_threshold(k, m, geom); k, m <= 3.
std::vector<EstimateCase> estimate_corpus(std::uint64_t seed, int count);

/// Polynomials with every zero outside |z| <= s (so h = g), rescaled to
/// max |g| = 1/e on |z| = 1.
std::vector<EstimateCase> zero_free_corpus(std::uint64_t seed, int count);

/// Uniform points in |z| < radius at least `clearance` from every entry of `avoid`.
std::vector<cplx> random_points(std::mt19937_64& rng, int count, double radius, const std::vector<cplx>& avoid,
                                double clearance);

}  // namespace marty
