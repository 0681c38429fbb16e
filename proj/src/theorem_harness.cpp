#include "marty/theorem_harness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

namespace marty {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::string point_text(cplx z) {
  std::ostringstream os;
  os.precision(6);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

// Results in index order; the first failing index's exception propagates.
template <class Fn>
auto parallel_map(std::size_t count, Fn fn) {
  using T = decltype(fn(std::size_t{}));
  std::vector<std::future<T>> futures;
  futures.reserve(count);
  for (std::size_t i = 0; i < count; ++i) futures.push_back(std::async(std::launch::async, fn, i));
  std::vector<T> out;
  out.reserve(count);
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

// Polar grid of the closed disk: the center plus `grid` circles of `grid` points.
template <class Visit>
void for_each_grid_point(const Disk& disk, int grid, Visit visit) {
  visit(disk.center);
  for (int j = 1; j <= grid; ++j) {
    const double rho = disk.radius * j / grid;
    for (int i = 0; i < grid; ++i) visit(disk.center + std::polar(rho, kTwoPi * i / grid));
  }
}

// (g'/g)^(order) as the partial-fraction sum over zeros (+) and poles (-) of g.
RationalFunction log_derivative(const RationalFunction& g, int order) {
  const int k = order + 1;
  const double sign = (order % 2 == 0) ? 1.0 : -1.0;
  const double scale = sign * factorial(order);
  RationalFunction sum;
  auto add = [&](const Root& r, double weight) {
    sum = sum + RationalFunction::from_factors(cplx{weight * scale * r.multiplicity}, RootList{},
                                               RootList({Root{r.location, k}}), g.options());
  };
  for (const auto& a : g.zeros()) add(a, 1.0);
  for (const auto& b : g.poles()) add(b, -1.0);
  return sum;
}

void require_positive(int value, const char* what) {
  if (value < 1) throw PreconditionError(std::string(what) + " must be >= 1");
}

void require_disk(const Disk& disk) {
  if (!(disk.radius > 0.0)) throw PreconditionError("disk radius must be positive");
}

double min_abs_on_grid(const RationalFunction& f, const Disk& disk, int grid) {
  double best = std::numeric_limits<double>::infinity();
  for_each_grid_point(disk, grid, [&](cplx z) {
    const PointValue v = f(z);
    if (!v.is_pole()) best = std::min(best, std::abs(v.value()));
  });
  return best;
}

double circle_sup(const RationalFunction& f, const Disk& disk, int points) {
  double best = 0.0;
  for (int i = 0; i < points; ++i) {
    const PointValue v = f(disk.center + std::polar(disk.radius, kTwoPi * i / points));
    if (v.is_pole()) return std::numeric_limits<double>::infinity();
    best = std::max(best, std::abs(v.value()));
  }
  return best;
}

}  // namespace

const char* to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::power_pole: return "power_pole";
    case FamilyKind::shifted_power: return "shifted_power";
    case FamilyKind::scaled_zero: return "scaled_zero";
    case FamilyKind::scaled_pole: return "scaled_pole";
    case FamilyKind::custom: return "custom";
  }
  return "unknown";
}

FamilyKind family_kind_from_string(const std::string& name) {
  for (auto kind : {FamilyKind::power_pole, FamilyKind::shifted_power, FamilyKind::scaled_zero,
                    FamilyKind::scaled_pole, FamilyKind::custom})
    if (name == to_string(kind)) return kind;
  throw PreconditionError("unknown family kind '" + name + "'");
}

void FamilySpec::validate() const {
  if (indices.empty()) throw PreconditionError("family index range is empty");
  for (int n : indices)
    if (n < 1) throw PreconditionError("family indices must be positive");
  if (kind == FamilyKind::custom) {
    if (custom.size() != indices.size())
      throw PreconditionError("custom family needs one function per index");
    return;
  }
  if (param < 1) throw PreconditionError("family parameter p or m must be >= 1");
}

RationalFunction FamilySpec::member(std::size_t i) const {
  if (i >= indices.size()) throw PreconditionError("family member index out of range");
  const double n = indices[i];
  switch (kind) {
    case FamilyKind::power_pole:
      return RationalFunction::from_factors(1.0, RootList{}, RootList({Root{cplx{}, param}}));
    case FamilyKind::shifted_power:
      return RationalFunction::from_factors(1.0, RootList({Root{base, indices[i]}}), RootList{});
    case FamilyKind::scaled_zero:
      if (param == 1) return RationalFunction::constant(1.0 / n);
      return RationalFunction::from_factors(1.0 / n, RootList({Root{cplx{}, param - 1}}), RootList{});
    case FamilyKind::scaled_pole:
      if (param == 1) return RationalFunction::constant(n);
      return RationalFunction::from_factors(n, RootList{}, RootList({Root{cplx{}, param - 1}}));
    case FamilyKind::custom:
      return custom.at(i);
  }
  throw PreconditionError("unknown family kind");
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::converges_to_zero: return "converges_to_zero";
    case Verdict::diverges: return "diverges";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

const char* to_string(Boundedness b) {
  switch (b) {
    case Boundedness::bounded: return "bounded";
    case Boundedness::unbounded: return "unbounded";
    case Boundedness::inconclusive: return "inconclusive";
  }
  return "unknown";
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, std::size_t min_points) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i)
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(y[i])) pts.emplace_back(std::log(x[i]), std::log(y[i]));
  if (pts.size() < std::max<std::size_t>(min_points, 2)) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (const auto& [a, b] : pts) {
    mx += a;
    my += b;
  }
  mx /= pts.size();
  my /= pts.size();
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [a, b] : pts) {
    sxy += (a - mx) * (b - my);
    sxx += (a - mx) * (a - mx);
  }
  if (sxx == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / sxx;
}

ConvergenceReport classify(std::vector<int> indices, std::vector<double> sups, const ConvergenceThresholds& thresholds) {
  ConvergenceReport report;
  report.indices = std::move(indices);
  report.sups = std::move(sups);
  const std::vector<double> x(report.indices.begin(), report.indices.end());
  report.slope = loglog_slope(x, report.sups, 4);

  if (report.sups.empty()) return report;
  if (std::any_of(report.sups.begin(), report.sups.end(), [](double v) { return !std::isfinite(v); })) {
    report.verdict = Verdict::diverges;
  } else if (report.sups.back() <= thresholds.zero_sup) {
    report.verdict = Verdict::converges_to_zero;
  } else if (std::isfinite(report.slope)) {
    if (report.slope < -thresholds.slope_tol)
      report.verdict = Verdict::converges_to_zero;
    else if (report.slope > thresholds.slope_tol)
      report.verdict = Verdict::diverges;
  }
  return report;
}

RationalFunction zero_quotient(const RationalFunction& g, int k, int m) {
  require_positive(k, "k");
  require_positive(m, "m");
  return g.derivative(k).pow(m) * g.pow(k - m);
}

RationalFunction pole_quotient(const RationalFunction& f, int k, int p) {
  require_positive(k, "k");
  require_positive(p, "p");
  const RationalFunction dk = f.derivative(k);
  if (dk.is_zero()) return RationalFunction();
  return dk.pow(p) * f.pow(-(p + k));
}

RationalFunction log_derivative_power(const RationalFunction& g, int k, int m) {
  require_positive(k, "k");
  require_positive(m, "m");
  if (g.is_zero()) throw PreconditionError("log_derivative_power: g is identically zero");
  return g.pow(k) * log_derivative(g, k - 1).pow(m);
}

void require_holomorphic(const RationalFunction& q, const Disk& disk, const std::string& what) {
  for (const auto& b : q.poles())
    if (std::abs(b.location - disk.center) <= disk.radius)
      throw HolomorphyError(what + " has a pole of order " + std::to_string(b.multiplicity) + " at " +
                                point_text(b.location),
                            b.location, b.multiplicity);
}

double grid_sup_abs(const RationalFunction& q, const Disk& disk, int grid) {
  require_disk(disk);
  require_holomorphic(q, disk, "grid_sup_abs: function");
  double best = 0.0;
  for_each_grid_point(disk, grid, [&](cplx z) { best = std::max(best, std::abs(q(z).value())); });
  return best;
}

ConvergenceReport theorem2a_check(const FamilySpec& family, int k, int m, const Disk& disk,
                                  const ConvergenceThresholds& thresholds) {
  family.validate();
  require_positive(k, "k");
  require_positive(m, "m");
  require_disk(disk);
  const std::size_t count = family.indices.size();

  const auto members = parallel_map(count, [&](std::size_t i) { return family.member(i); });
  const auto quotients = parallel_map(count, [&](std::size_t i) {
    RationalFunction q = zero_quotient(members[i], k, m);
    require_holomorphic(q, disk, "(g_n^(k))^m / g_n^(m-k) for n = " + std::to_string(family.indices[i]));
    return q;
  });

  for (std::size_t i = 0; i < count; ++i) {
    const RationalFunction& g = members[i];
    for (const auto& b : g.poles())
      if (std::abs(b.location - disk.center) <= disk.radius)
        throw PreconditionError("g_n has a pole in the disk at " + point_text(b.location));
    if (g.is_zero()) continue;
    for (const auto& a : g.zeros())
      if (std::abs(a.location - disk.center) <= disk.radius && a.multiplicity < m)
        throw MultiplicityError("zero of g_n at " + point_text(a.location) + " has multiplicity " +
                                    std::to_string(a.multiplicity) + " < m = " + std::to_string(m),
                                a.location, a.multiplicity);
  }

  const auto boundary = parallel_map(count, [&](std::size_t i) { return circle_sup(members[i], disk, 4 * thresholds.grid); });
  if (classify(family.indices, boundary, thresholds).verdict != Verdict::converges_to_zero)
    throw PreconditionError("g_n does not tend to 0 uniformly on the disk");

  auto sups = parallel_map(count, [&](std::size_t i) { return grid_sup_abs(quotients[i], disk, thresholds.grid); });
  return classify(family.indices, std::move(sups), thresholds);
}

ConvergenceReport theorem2b_check(const FamilySpec& family, int k, int p, const Disk& disk,
                                  const ConvergenceThresholds& thresholds) {
  family.validate();
  require_positive(k, "k");
  require_positive(p, "p");
  require_disk(disk);
  const std::size_t count = family.indices.size();

  const auto members = parallel_map(count, [&](std::size_t i) { return family.member(i); });
  const auto quotients = parallel_map(count, [&](std::size_t i) {
    RationalFunction d = pole_quotient(members[i], k, p);
    require_holomorphic(d, disk, "(f_n^(k))^p / f_n^(p+k) for n = " + std::to_string(family.indices[i]));
    return d;
  });

  for (std::size_t i = 0; i < count; ++i)
    for (const auto& b : members[i].poles())
      if (std::abs(b.location - disk.center) <= disk.radius && b.multiplicity < p)
        throw MultiplicityError("pole of f_n at " + point_text(b.location) + " has multiplicity " +
                                    std::to_string(b.multiplicity) + " < p = " + std::to_string(p),
                                b.location, b.multiplicity);

  if (min_abs_on_grid(members.back(), disk, thresholds.grid) <= thresholds.infinity)
    throw PreconditionError("f_n does not tend to infinity on the disk");

  auto sups = parallel_map(count, [&](std::size_t i) { return grid_sup_abs(quotients[i], disk, thresholds.grid); });
  return classify(family.indices, std::move(sups), thresholds);
}

int required_pole_multiplicity(int k, double alpha) {
  if (!(alpha > 1.0)) throw PreconditionError("required_pole_multiplicity: alpha must be > 1");
  const double ratio = k / (alpha - 1.0);
  // Absorb rounding so that exact integer ratios are not bumped up.
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-12 * std::max(1.0, ratio)) return static_cast<int>(nearest);
  return static_cast<int>(std::ceil(ratio));
}

BoundednessScan theorem1_scan(const FamilySpec& family, int k, double alpha, const Disk& disk, int resolution,
                              const ConvergenceThresholds& thresholds) {
  if (!(alpha > 1.0)) throw PreconditionError("theorem1_scan: alpha must be > 1");
  family.validate();
  require_positive(k, "k");
  require_disk(disk);
  const MartyParams params{k, alpha};

  BoundednessScan scan;
  scan.indices = family.indices;
  scan.required_multiplicity = required_pole_multiplicity(k, alpha);

  const auto members = parallel_map(family.indices.size(), [&](std::size_t i) { return family.member(i); });
  for (std::size_t i = 0; i < members.size(); ++i)
    for (const auto& b : members[i].poles())
      if (std::abs(b.location - disk.center) <= disk.radius && b.multiplicity < scan.required_multiplicity)
        scan.warnings.push_back("n = " + std::to_string(family.indices[i]) + ": pole at " + point_text(b.location) +
                                " has multiplicity " + std::to_string(b.multiplicity) + " < " +
                                std::to_string(scan.required_multiplicity));

  scan.sups = parallel_map(members.size(), [&](std::size_t i) {
    return sup_on_disk(members[i], params, disk.center, disk.radius, resolution);
  });

  const auto& v = scan.sups;
  if (std::any_of(v.begin(), v.end(), [](double x) { return !std::isfinite(x); })) {
    scan.verdict = Boundedness::unbounded;
    return scan;
  }
  const std::size_t start = v.size() / 2;
  bool non_increasing = true;
  for (std::size_t i = start + 1; i < v.size(); ++i)
    if (v[i] > v[i - 1] * (1.0 + 1e-9)) non_increasing = false;
  const std::vector<double> x(scan.indices.begin() + static_cast<std::ptrdiff_t>(start), scan.indices.end());
  const std::vector<double> tail(v.begin() + static_cast<std::ptrdiff_t>(start), v.end());
  const double slope = loglog_slope(x, tail, 2);

  if (non_increasing || (std::isfinite(slope) && slope <= thresholds.slope_tol))
    scan.verdict = Boundedness::bounded;
  else if (v.back() > thresholds.infinity)
    scan.verdict = Boundedness::unbounded;
  return scan;
}

SharpnessResult sharpness_power_pole(int k, double alpha, int p, std::vector<double> radii) {
  require_positive(k, "k");
  require_positive(p, "p");
  if (!(alpha > 0.0)) throw PreconditionError("sharpness_power_pole: alpha must be > 0");
  if (!((alpha - 1.0) * p < k)) throw PreconditionError("sharpness_power_pole: requires p < k/(alpha-1)");
  if (radii.size() < 2) throw PreconditionError("sharpness_power_pole: needs at least two radii");
  for (double r : radii)
    if (!(r > 0.0)) throw PreconditionError("sharpness_power_pole: radii must be positive");

  const MartyQuotient quotient(RationalFunction::from_factors(1.0, RootList{}, RootList({Root{cplx{}, p}})),
                               MartyParams{k, alpha});
  SharpnessResult out;
  out.predicted_slope = (alpha - 1.0) * p - k;
  std::vector<double> values;
  for (double r : radii) {
    const double v = quotient(cplx{r}).value;
    out.samples.push_back({r, cplx{r}, v, std::numeric_limits<double>::quiet_NaN()});
    values.push_back(v);
  }
  out.fitted_slope = loglog_slope(radii, values);

  std::vector<std::size_t> order(radii.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return radii[a] > radii[b]; });
  out.diverges = true;
  for (std::size_t i = 1; i < order.size(); ++i)
    if (!(values[order[i]] > values[order[i - 1]])) out.diverges = false;
  return out;
}

SharpnessResult sharpness_shifted_power(int k, double alpha, const std::vector<int>& n_range,
                                        const std::vector<cplx>& points) {
  require_positive(k, "k");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw PreconditionError("sharpness_shifted_power: requires 0 < alpha <= 1");
  if (n_range.size() < 2) throw PreconditionError("sharpness_shifted_power: needs at least two indices");
  if (!std::is_sorted(n_range.begin(), n_range.end()) ||
      std::adjacent_find(n_range.begin(), n_range.end()) != n_range.end())
    throw PreconditionError("sharpness_shifted_power: indices must be strictly increasing");
  if (n_range.front() <= k) throw PreconditionError("sharpness_shifted_power: indices must exceed k");
  if (points.empty()) throw PreconditionError("sharpness_shifted_power: no evaluation points");

  const cplx base{3.0};
  const auto per_index = parallel_map(n_range.size(), [&](std::size_t i) {
    const int n = n_range[i];
    const MartyQuotient quotient(RationalFunction::from_factors(1.0, RootList({Root{base, n}}), RootList{}),
                                 MartyParams{k, alpha});
    std::vector<SharpnessSample> row;
    for (cplx z : points) {
      const double dist = std::abs(z - base);
      const double bound = 0.5 * std::pow(n - k, k) * std::pow(dist, n * (1.0 - alpha) - k);
      row.push_back({static_cast<double>(n), z, quotient(z).value, bound});
    }
    return row;
  });

  SharpnessResult out;
  out.diverges = true;
  for (std::size_t i = 0; i < per_index.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      const auto& s = per_index[i][j];
      if (!(s.value >= s.bound)) out.above_bound = false;
      if (i > 0 && !(s.value > per_index[i - 1][j].value)) out.diverges = false;
      out.samples.push_back(s);
    }
  }
  return out;
}

std::vector<cplx> default_sharpness_points() {
  std::vector<cplx> pts;
  for (int j = 0; j < 10; ++j) pts.push_back(std::polar(0.9 * j / 9.0, kTwoPi * j / 10.0));
  return pts;
}

void InequalityMargin::add(double lhs, double rhs) {
  ++points;
  const double scale = std::max({std::abs(lhs), std::abs(rhs), std::numeric_limits<double>::min()});
  const double rel = (rhs - lhs) / scale;
  if (rel < worst_relative) {
    worst_relative = rel;
    lhs_at_worst = lhs;
    rhs_at_worst = rhs;
  }
}

std::vector<std::pair<std::string, InequalityMargin>> EstimateChainReport::all() const {
  return {{"poisson", poisson},         {"blaschke_sum", blaschke_sum}, {"combined", combined},
          {"nearest_zero", nearest_zero}, {"zero_count", zero_count},   {"pointwise", pointwise},
          {"harnack_form", harnack_form}, {"zero_free", zero_free}};
}

double unit_circle_sup(const RationalFunction& g) { return circle_sup(g, Disk{cplx{}, 1.0}, 1024); }

RationalFunction rescale_to_sup(const RationalFunction& g, double target) {
  if (!(target > 0.0)) throw PreconditionError("rescale_to_sup: target must be positive");
  const double sup = unit_circle_sup(g);
  if (!(sup > 0.0) || !std::isfinite(sup)) throw PreconditionError("rescale_to_sup: sup on |z| = 1 must be finite and nonzero");
  return g * cplx{target / sup};
}

EstimateChainReport estimate_chain_check(const RationalFunction& g, int k, int m, const DiskGeometry& geom, int grid) {
  require_positive(k, "k");
  require_positive(m, "m");
  if (grid < 2) throw PreconditionError("estimate_chain_check: grid must be >= 2");
  if (g.is_zero()) throw PreconditionError("estimate_chain_check: g is identically zero");
  for (const auto& b : g.poles())
    if (std::abs(b.location) <= 1.0)
      throw PreconditionError("estimate_chain_check: g has a pole at " + point_text(b.location) + " in the closed unit disk");
  for (const auto& a : g.zeros())
    if (std::abs(a.location) < 1.0 && a.multiplicity < m)
      throw MultiplicityError("estimate_chain_check: zero at " + point_text(a.location) + " has multiplicity " +
                                  std::to_string(a.multiplicity) + " < m = " + std::to_string(m),
                              a.location, a.multiplicity);

  EstimateChainReport report;
  report.x0 = x0_threshold(k, m, geom);
  const double sup = unit_circle_sup(g);
  if (sup > report.x0 * (1.0 + 1e-12))
    throw PreconditionError("estimate_chain_check: max |g| on |z| = 1 exceeds x0; rescale g first");

  const BlaschkeSplit split = build_split(g, geom);
  const double s = geom.s();
  const double r = geom.r();
  const double gap = geom.gap();
  const double kf = factorial(k);
  const double two_k = std::pow(2.0, k);
  for (const auto& f : split.factors) report.zeros_in_s += f.multiplicity;
  const double n = report.zeros_in_s;

  const double log_inv_h0 = -std::log(std::abs(split.h(0.0).value()));
  const RationalFunction q = log_derivative_power(g, k, m);
  require_holomorphic(q, Disk{cplx{}, r}, "estimate_chain_check: g^k [(g'/g)^(k-1)]^m");
  const RationalFunction h_log = log_derivative(split.h, k - 1);
  const RationalFunction g_log = log_derivative(g, k - 1);

  const double poisson_rhs = 2.0 * kf / std::pow(gap, k + 1) * log_inv_h0;
  const double pointwise_coeff = 6.0 * kf * two_k / std::pow(gap, 2 * k + 1) * log_inv_h0;
  const double harnack_coeff = 12.0 * s * kf * two_k / std::pow(gap, 2 * k + 2);

  for_each_grid_point(Disk{cplx{}, r}, grid, [&](cplx z) {
    const double q_abs = std::abs(q(z).value());
    const double h_abs = std::abs(split.h(z).value());
    const double log_inv_h = -std::log(h_abs);

    report.poisson.add(std::abs(h_log(z).value()), poisson_rhs);
    report.pointwise.add(q_abs, std::pow(h_abs, k) * std::pow(pointwise_coeff, m) *
                                    std::pow(m + log_inv_h / (gap * gap), 2 * m));
    report.harnack_form.add(q_abs, std::pow(h_abs, k) * std::pow(harnack_coeff * log_inv_h, m) *
                                       std::pow(m + log_inv_h / (gap * gap), 2 * m));
    if (split.factors.empty()) {
      report.zero_free.add(q_abs, std::pow(h_abs, k) * std::pow(poisson_rhs, m));
      return;
    }

    // The remaining bounds need z off the zeros of g.
    double nearest = std::numeric_limits<double>::infinity();
    double weighted = 0.0;
    for (const auto& f : split.factors) {
      const double d = std::abs(z - f.a);
      nearest = std::min(nearest, d);
      weighted += f.multiplicity / std::pow(d, k);
    }
    if (nearest < 1e-6) return;

    cplx b_log{};
    for (const auto& f : split.factors) b_log += static_cast<double>(f.multiplicity) * factor_log_derivative(f, k, z).value();
    report.blaschke_sum.add(std::abs(b_log), factorial(k - 1) * (n / std::pow(gap, k) + weighted));
    report.combined.add(std::abs(g_log(z).value()),
                        6.0 * kf * two_k / std::pow(gap, k + 1) * log_inv_h0 * n * weighted);

    const NearestZeroReduction red = nearest_zero_reduction(split, geom, z, m);
    const double b_star = red.abs_b_star_at_z0;
    report.nearest_zero.add(q_abs, std::pow(h_abs / b_star, k) * std::pow(pointwise_coeff, m) * std::pow(n, 2 * m));
    report.zero_count.add(n, m + std::log(b_star / h_abs) / (gap * gap));
  });
  return report;
}

double harnack_check(const RationalFunction& h, const DiskGeometry& geom, int grid) {
  if (grid < 2) throw PreconditionError("harnack_check: grid must be >= 2");
  const double s = geom.s();
  const double r = geom.r();
  if (!h.is_zero())
    for (const auto& a : h.zeros())
      if (std::abs(a.location) <= s)
        throw PreconditionError("harnack_check: h has a zero at " + point_text(a.location) + " in |z| <= s");
  if (h.is_zero()) throw PreconditionError("harnack_check: h is identically zero");
  for (const auto& b : h.poles())
    if (std::abs(b.location) <= s) throw PreconditionError("harnack_check: h has a pole in |z| <= s");
  if (!(circle_sup(h, Disk{cplx{}, s}, 1024) < 1.0))
    throw PreconditionError("harnack_check: requires |h| < 1 on |z| <= s");

  const double ratio = (s + r) / (s - r);
  const double at_center = -std::log(std::abs(h(0.0).value()));
  double margin = std::numeric_limits<double>::infinity();
  for_each_grid_point(Disk{cplx{}, r}, grid, [&](cplx z) {
    margin = std::min(margin, ratio * -std::log(std::abs(h(z).value())) - at_center);
  });
  return margin;
}

}  // namespace marty
