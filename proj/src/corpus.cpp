#include "marty/corpus.hpp"

#include <cmath>
#include <numbers>

#include "marty/theorem_harness.hpp"

namespace marty {

namespace {

cplx uniform_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double rho = radius * std::sqrt(u(rng));
  return std::polar(rho, 2.0 * std::numbers::pi * u(rng));
}

bool clear_of(cplx z, const std::vector<cplx>& others, double clearance) {
  for (cplx o : others)
    if (std::abs(z - o) < clearance) return false;
  return true;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

}  // namespace

std::vector<cplx> random_points(std::mt19937_64& rng, int count, double radius, const std::vector<cplx>& avoid,
                                double clearance) {
  std::vector<cplx> out;
  while (static_cast<int>(out.size()) < count) {
    const cplx z = uniform_in_disk(rng, radius);
    if (clear_of(z, avoid, clearance)) out.push_back(z);
  }
  return out;
}

std::vector<CircleCase> circle_corpus(std::uint64_t seed, int count, double clearance) {
  std::mt19937_64 rng(seed);
  std::vector<CircleCase> out;
  while (static_cast<int>(out.size()) < count) {
    CircleCase c;
    c.r = uniform(rng, 0.4, 0.9);
    c.base = uniform_in_disk(rng, 0.5 * c.r);
    const int nz = uniform_int(rng, 0, 5);
    const int np = uniform_int(rng, nz == 0 ? 1 : 0, 5);

    std::vector<cplx> taken{c.base};
    auto place = [&]() {
      for (;;) {
        const cplx z = uniform_in_disk(rng, 1.5);
        if (std::abs(std::abs(z) - c.r) >= clearance && clear_of(z, taken, clearance)) {
          taken.push_back(z);
          return z;
        }
      }
    };
    std::vector<Root> zeros, poles;
    for (int i = 0; i < nz; ++i) zeros.push_back({place(), 1});
    for (int i = 0; i < np; ++i) poles.push_back({place(), 1});
    const cplx lead = std::polar(uniform(rng, 0.2, 5.0), uniform(rng, 0.0, 2.0 * std::numbers::pi));
    c.f = RationalFunction::from_factors(lead, RootList(std::move(zeros)), RootList(std::move(poles)));
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CountingCase> counting_corpus(std::uint64_t seed, int count, double clearance) {
  std::mt19937_64 rng(seed);
  std::vector<CountingCase> out;
  while (static_cast<int>(out.size()) < count) {
    CountingCase c;
    c.R = uniform(rng, 0.5, 0.95);
    c.r = uniform(rng, 0.2, c.R - 0.1);
    c.base = uniform_in_disk(rng, 0.9 * c.r);
    const int np = uniform_int(rng, 1, 3);
    std::vector<cplx> taken{c.base};
    std::vector<Root> poles;
    while (static_cast<int>(poles.size()) < np) {
      const cplx b = uniform_in_disk(rng, c.R);
      const double mod = std::abs(b);
      if (std::abs(mod - c.r) < clearance || std::abs(mod - c.R) < clearance || !clear_of(b, taken, clearance))
        continue;
      taken.push_back(b);
      poles.push_back({b, uniform_int(rng, 1, 3)});
    }
    c.f = RationalFunction::from_factors(1.0, RootList{}, RootList(std::move(poles)));
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<EstimateCase> estimate_corpus(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<EstimateCase> out;
  while (static_cast<int>(out.size()) < count) {
    EstimateCase c;
    c.k = uniform_int(rng, 1, 3);
    c.m = uniform_int(rng, 1, 3);
    const double r = uniform(rng, 0.2, 0.5);
    c.geom = DiskGeometry(r, uniform(rng, r + 0.2, 0.95));
    const double s = c.geom.s();
    const int nz = uniform_int(rng, 1, 3);
    std::vector<cplx> taken;
    std::vector<Root> zeros;
    while (static_cast<int>(zeros.size()) < nz) {
      const cplx a = uniform_in_disk(rng, 0.95);
      if (std::abs(std::abs(a) - s) < 0.02 * s || !clear_of(a, taken, 0.05)) continue;
      taken.push_back(a);
      zeros.push_back({a, c.m + uniform_int(rng, 0, 1)});
    }
    const double fraction = uniform(rng, 0.2, 1.0);
    const RationalFunction g = RationalFunction::from_factors(1.0, RootList(std::move(zeros)), RootList{});
    c.g = rescale_to_sup(g, fraction * x0_threshold(c.k, c.m, c.geom));
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<EstimateCase> zero_free_corpus(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<EstimateCase> out;
  while (static_cast<int>(out.size()) < count) {
    EstimateCase c;
    c.k = uniform_int(rng, 1, 4);
    c.m = 1;
    const double r = uniform(rng, 0.2, 0.5);
    c.geom = DiskGeometry(r, uniform(rng, r + 0.2, 0.95));
    const double s = c.geom.s();
    const int nz = uniform_int(rng, 0, 4);
    std::vector<Root> zeros;
    while (static_cast<int>(zeros.size()) < nz) {
      const cplx a = uniform_in_disk(rng, 2.0);
      if (std::abs(a) < 1.05 * s) continue;
      zeros.push_back({a, uniform_int(rng, 1, 2)});
    }
    const RationalFunction g = nz == 0 ? RationalFunction::constant(std::polar(1.0, uniform(rng, 0.0, 6.0)))
                                       : RationalFunction::from_factors(1.0, RootList(std::move(zeros)), RootList{});
    c.g = rescale_to_sup(g, std::exp(-1.0));
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace marty
