#include "marty/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace marty {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool lex_less(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

double location_scale(cplx z) { return std::max(1.0, std::abs(z)); }

// Scale of the rounding error in the j-th Taylor coefficient at c.
double taylor_scale(const Polynomial& p, cplx c, int j) {
  const double ac = std::abs(c);
  double acc = 0.0;
  for (int i = j; i <= p.degree(); ++i) {
    double binom = 1.0;
    for (int q = 0; q < j; ++q) binom = binom * (i - q) / (q + 1);
    acc += std::abs(p[i]) * binom * std::pow(ac, i - j);
  }
  return acc;
}

std::vector<cplx> aberth(const Polynomial& p, const FindRootsOptions& options) {
  const int n = p.degree();
  std::vector<cplx> z(static_cast<std::size_t>(n));
  if (n == 1) {
    z[0] = -p[0] / p[1];
    return z;
  }

  const Polynomial dp = p.derivative();
  // Initial guesses on a circle whose radius is the geometric mean of the
  // root moduli, rotated off the real axis.
  const double radius = std::pow(std::abs(p[0]) / std::abs(p.leading()), 1.0 / n);
  for (int i = 0; i < n; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / n + 0.4;
    z[static_cast<std::size_t>(i)] = std::polar(radius, angle);
  }

  auto backward_error = [&](cplx x) {
    const double s = p.evaluation_scale(x);
    return s > 0.0 ? std::abs(p(x)) / s : 0.0;
  };

  std::vector<bool> done(static_cast<std::size_t>(n), false);
  const double strict = 16.0 * kEps;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    bool all_done = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      const cplx pv = p(z[i]);
      if (std::abs(pv) <= strict * p.evaluation_scale(z[i])) {
        done[i] = true;
        continue;
      }
      all_done = false;
      const cplx dv = dp(z[i]);
      cplx sum{};
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i && z[i] != z[j]) sum += 1.0 / (z[i] - z[j]);
      cplx step;
      if (dv == cplx{}) {
        step = cplx{1e-3 * location_scale(z[i]), 1e-3};
      } else {
        const cplx ratio = pv / dv;
        step = ratio / (1.0 - ratio * sum);
      }
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = cplx{1e-3, 1e-3};
      z[i] -= step;
    }
    if (all_done) return z;
  }

  double worst = 0.0;
  for (const auto& x : z) worst = std::max(worst, backward_error(x));
  if (worst <= options.tol) return z;

  std::vector<Root> partial;
  for (const auto& x : z) partial.push_back({x, 1});
  throw RootFindingError("root iteration did not converge: worst backward error " +
                             std::to_string(worst),
                         RootList(std::move(partial)));
}

// c is an m-fold root when the Taylor coefficients of order < m at c are at
// rounding-noise level.
bool is_multiple_root(const Polynomial& p, cplx c, int m, double tol) {
  const auto t = p.taylor_coefficients(c);
  for (int j = 0; j < m; ++j)
    if (std::abs(t[static_cast<std::size_t>(j)]) > tol * taylor_scale(p, c, j)) return false;
  return true;
}

// An m-fold root of p is a simple root of p^(m-1): polish the cluster
// centroid with Newton steps on that derivative.
cplx refine_multiple_root(const Polynomial& p, cplx c, int m) {
  const Polynomial lower = p.derivative(m - 1);
  const Polynomial upper = p.derivative(m);
  for (int iter = 0; iter < 30; ++iter) {
    const cplx du = upper(c);
    if (du == cplx{}) break;
    const cplx step = lower(c) / du;
    c -= step;
    if (std::abs(step) <= 4.0 * kEps * location_scale(c)) break;
  }
  return c;
}

std::vector<Root> cluster(const Polynomial& p, std::vector<cplx> z, const FindRootsOptions& options) {
  std::sort(z.begin(), z.end(), lex_less);
  const std::size_t n = z.size();
  std::vector<bool> used(n, false);
  std::vector<Root> out;

  for (std::size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < n; ++j)
      if (!used[j]) free.push_back(j);
    std::sort(free.begin(), free.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(z[a] - z[i]) < std::abs(z[b] - z[i]);
    });

    std::size_t accepted = 1;
    cplx center = z[i];
    for (std::size_t m = free.size(); m >= 2; --m) {
      cplx c{};
      for (std::size_t q = 0; q < m; ++q) c += z[free[q]];
      c /= static_cast<double>(m);
      double spread = 0.0;
      for (std::size_t q = 0; q < m; ++q) spread = std::max(spread, std::abs(z[free[q]] - c));
      const double scale = location_scale(c);
      const bool tight = spread <= options.cluster_rel_tol * scale;
      bool plausible = false;
      if (spread <= 0.1 * scale) {
        // Aberth leaves an m-fold root smeared to O(eps^(1/m)); the polished
        // centroid is accurate to rounding.
        const cplx refined = refine_multiple_root(p, c, static_cast<int>(m));
        const bool stayed = std::abs(refined - c) <= spread + options.cluster_rel_tol * scale;
        if (tight) {
          if (stayed) c = refined;
        } else if (stayed && is_multiple_root(p, refined, static_cast<int>(m), options.multiplicity_tol)) {
          plausible = true;
          c = refined;
        }
      }
      if (tight || plausible) {
        accepted = m;
        center = c;
        break;
      }
    }
    for (std::size_t q = 0; q < accepted; ++q) used[free[q]] = true;
    out.push_back({center, static_cast<int>(accepted)});
  }
  return out;
}

}  // namespace

RootList::RootList(std::vector<Root> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const Root& a, const Root& b) { return lex_less(a.location, b.location); });
}

int RootList::total_multiplicity() const {
  int total = 0;
  for (const auto& r : entries_) total += r.multiplicity;
  return total;
}

int RootList::count_in_closed_disk(cplx center, double radius) const {
  int total = 0;
  for (const auto& r : entries_)
    if (std::abs(r.location - center) <= radius) total += r.multiplicity;
  return total;
}

RootList RootList::merged_with(const RootList& other, double rel_tol) const {
  std::vector<Root> out = entries_;
  for (const auto& r : other.entries_) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Root& e) {
      return std::abs(e.location - r.location) <= rel_tol * location_scale(e.location);
    });
    if (it != out.end())
      it->multiplicity += r.multiplicity;
    else
      out.push_back(r);
  }
  return RootList(std::move(out));
}

RootList RootList::scaled(int factor) const {
  std::vector<Root> out = entries_;
  for (auto& r : out) r.multiplicity *= factor;
  return RootList(std::move(out));
}

Polynomial RootList::expand() const {
  Polynomial result = Polynomial::constant(1.0);
  for (const auto& r : entries_) result = result * Polynomial::linear_factor(r.location).pow(r.multiplicity);
  return result;
}

RootList find_roots(const Polynomial& p, const FindRootsOptions& options) {
  if (p.is_zero()) throw PreconditionError("find_roots: polynomial is identically zero");

  const int zeros_at_origin = p.low_order_zeros();
  const Polynomial rest = p.shift_down(zeros_at_origin);

  std::vector<Root> found;
  if (rest.degree() >= 1) found = cluster(rest, aberth(rest, options), options);

  RootList result(std::move(found));
  if (zeros_at_origin > 0) {
    // Keep the exact origin as the representative location.
    result = RootList({Root{cplx{}, zeros_at_origin}}).merged_with(result, options.cluster_rel_tol);
  }
  return result;
}

}  // namespace marty
