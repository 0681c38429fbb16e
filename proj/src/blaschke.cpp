#include "marty/blaschke.hpp"

#include <cmath>
#include <numbers>

namespace marty {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// (z - a) G_a(z) = (s^2 - conj(a) z) / s; for a = 0 this is the constant s.
cplx reflected_lead(cplx a, double s) { return a == cplx{} ? cplx{s} : -std::conj(a) / s; }

}  // namespace

DiskGeometry::DiskGeometry(double r, double R) : r_(r), s_(0.5 * (r + R)), R_(R) {
  if (!(0.0 < r && r < R && R < 1.0)) throw PreconditionError("DiskGeometry requires 0 < r < R < 1");
}

PointValue BlaschkeFactor::eval(cplx z) const {
  if (z == a) return PointValue::pole();
  return PointValue((s * s - std::conj(a) * z) / (s * (z - a)));
}

RationalFunction BlaschkeFactor::to_rational() const {
  const cplx lead = std::pow(reflected_lead(a, s), multiplicity);
  RootList zeros;
  if (a != cplx{}) zeros = RootList({Root{s * s / std::conj(a), multiplicity}});
  return RationalFunction::from_factors(lead, zeros, RootList({Root{a, multiplicity}}));
}

RationalFunction blaschke_product(const std::vector<BlaschkeFactor>& factors) {
  cplx lead{1.0};
  std::vector<Root> zeros;
  std::vector<Root> poles;
  for (const auto& f : factors) {
    lead *= std::pow(reflected_lead(f.a, f.s), f.multiplicity);
    if (f.a != cplx{}) zeros.push_back({f.s * f.s / std::conj(f.a), f.multiplicity});
    poles.push_back({f.a, f.multiplicity});
  }
  return RationalFunction::from_factors(lead, RootList(std::move(zeros)), RootList(std::move(poles)));
}

BlaschkeSplit build_split(const RationalFunction& g, const DiskGeometry& geom) {
  if (g.is_zero()) throw PreconditionError("build_split: g is identically zero");
  for (const auto& b : g.poles())
    if (std::abs(b.location) <= geom.R())
      throw PreconditionError("build_split: g has a pole inside |z| <= R");

  const double s = geom.s();
  BlaschkeSplit split;
  split.s = s;
  split.g = g;
  cplx lead = g.num().leading();
  std::vector<Root> h_zeros;
  for (const auto& a : g.zeros()) {
    const double modulus = std::abs(a.location);
    if (std::abs(modulus - s) < 1e-3 * s)
      throw ClearanceError("build_split: zero of g within clearance of |z| = s", a.location, false);
    if (modulus >= s) {
      h_zeros.push_back(a);
      continue;
    }
    split.factors.push_back({a.location, s, a.multiplicity});
    lead *= std::pow(reflected_lead(a.location, s), a.multiplicity);
    if (a.location != cplx{}) h_zeros.push_back({s * s / std::conj(a.location), a.multiplicity});
  }
  split.h = RationalFunction::from_factors(lead, RootList(std::move(h_zeros)), g.poles(), g.options());
  return split;
}

PointValue factor_log_derivative(const BlaschkeFactor& factor, int k, cplx z) {
  if (k < 1) throw PreconditionError("factor_log_derivative: k must be >= 1");
  const cplx ac = std::conj(factor.a);
  const cplx reflected = factor.s * factor.s - ac * z;
  if (z == factor.a || reflected == cplx{}) return PointValue::pole();
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return PointValue(factorial(k - 1) * (-std::pow(ac, k) / std::pow(reflected, k) + sign / std::pow(z - factor.a, k)));
}

PoissonLogDerivative poisson_log_derivative(const BlaschkeSplit& split, int k, cplx z, const QuadratureSpec& spec) {
  if (k < 1) throw PreconditionError("poisson_log_derivative: k must be >= 1");
  const double s = split.s;
  if (!(std::abs(z) < s)) throw PreconditionError("poisson_log_derivative: requires |z| < s");
  for (const auto& a : split.h.zeros())
    if (std::abs(a.location) <= s)
      throw PreconditionError("poisson_log_derivative: h vanishes in |z| <= s");

  const RationalFunction& h = split.h;
  auto integrand = [&](double t) {
    const cplx w = std::polar(s, t);
    return std::log(std::abs(h(w).value())) * 2.0 * w / std::pow(w - z, k + 1);
  };
  const auto q = periodic_mean<cplx>(integrand, spec);

  PoissonLogDerivative out;
  out.quadrature = factorial(k) * q.value;
  out.exact = h.log_derivative_at(z, k - 1).value();
  out.error_estimate = factorial(k) * q.error_estimate;
  out.nodes_used = q.nodes_used;
  return out;
}

double poisson_bound(int k, const DiskGeometry& geom, double abs_h0) {
  return -2.0 * factorial(k) / std::pow(geom.gap(), k + 1) * std::log(abs_h0);
}

NearestZeroReduction nearest_zero_reduction(const BlaschkeSplit& split, const DiskGeometry& geom, cplx z0, int m) {
  if (m < 1) throw PreconditionError("nearest_zero_reduction: m must be >= 1");
  if (split.factors.empty()) throw PreconditionError("nearest_zero_reduction: g has no zero in |z| < s");
  const PointValue gz0 = split.g(z0);
  if (!gz0.is_pole() && gz0.value() == cplx{}) throw PreconditionError("nearest_zero_reduction: g(z0) = 0");
  for (const auto& f : split.factors)
    if (f.multiplicity < m) throw MultiplicityError("nearest_zero_reduction: zero of multiplicity below m", f.a, f.multiplicity);

  NearestZeroReduction out;
  double best = std::abs(z0 - split.factors[0].a);
  for (std::size_t j = 1; j < split.factors.size(); ++j) {
    const double d = std::abs(z0 - split.factors[j].a);
    if (d < best) {
      best = d;
      out.nearest = j;
    }
  }
  if (best == 0.0) throw PreconditionError("nearest_zero_reduction: g(z0) = 0");

  for (std::size_t j = 0; j < split.factors.size(); ++j) {
    BlaschkeFactor f = split.factors[j];
    if (j == out.nearest) f.multiplicity -= m;
    if (f.multiplicity > 0) out.reduced.push_back(f);
  }

  BlaschkeFactor nearest = split.factors[out.nearest];
  nearest.multiplicity = m;
  out.g_star = split.g * nearest.to_rational();

  double b_abs = 1.0;
  for (const auto& f : out.reduced) b_abs *= std::pow(std::abs(f.eval(z0).value()), f.multiplicity);
  out.abs_b_star_at_z0 = b_abs;

  const double two_pi = 2.0 * std::numbers::pi;
  for (int i = 0; i < 512; ++i) {
    const PointValue v = out.g_star(std::polar(geom.R(), two_pi * i / 512));
    out.max_g_star_on_R = std::max(out.max_g_star_on_R, std::abs(v.value()));
  }
  return out;
}

double h_function(double x, double y, int k, int m, const DiskGeometry& geom) {
  const double gap2 = geom.gap() * geom.gap();
  return std::pow(x / y, k) * std::pow(m + std::log(y / x) / gap2, 2 * m);
}

double x0_threshold(int k, int m, const DiskGeometry& geom) {
  if (k < 1 || m < 1) throw PreconditionError("x0_threshold: k and m must be >= 1");
  // d/du log H = -k + 2m L / (m + L u) with u = log(y/x), L = 1/(s-r)^2, is
  // decreasing in u, so monotonicity on y >= 1 is decided at y = 1.
  const double exponent = m * (2.0 / k - geom.gap() * geom.gap());
  return std::min(std::exp(-1.0), std::exp(-exponent));
}

}  // namespace marty
