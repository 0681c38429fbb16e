#include "marty/marty_quantities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace marty {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(1 + e^x) without overflow.
double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

}  // namespace

void MartyParams::validate() const {
  if (k < 1) throw PreconditionError("MartyParams: k must be >= 1");
  if (!(alpha > 0.0)) throw PreconditionError("MartyParams: alpha must be > 0");
}

const char* to_string(PoleRegime regime) {
  switch (regime) {
    case PoleRegime::regular: return "regular";
    case PoleRegime::vanishing: return "vanishing";
    case PoleRegime::equality: return "equality";
    case PoleRegime::infinite: return "infinite";
  }
  return "unknown";
}

double spherical_derivative(const RationalFunction& f, cplx z) {
  if (f.pole_near(z, kNearPoleDistance)) {
    // (1/f)^# with 1/f = D/N; N(z) != 0 by reduced form.
    const cplx n = f.num()(z);
    const cplx d = f.den()(z);
    const cplx dn = f.num().derivative()(z);
    const cplx dd = f.den().derivative()(z);
    const cplx recip_deriv = (dd * n - d * dn) / (n * n);
    return std::abs(recip_deriv) / (1.0 + std::norm(d / n));
  }
  const cplx fz = f(z).value();
  const cplx dz = f.derivative()(z).value();
  return std::abs(dz) / (1.0 + std::norm(fz));
}

MartyQuotient::MartyQuotient(RationalFunction f, MartyParams params)
    : f_(std::move(f)), dk_(f_.derivative(params.k)), params_(params) {
  params_.validate();
}

ExtendedValue MartyQuotient::at_pole(const Root& pole) const {
  const double excess = (params_.alpha - 1.0) * pole.multiplicity - params_.k;
  if (std::abs(excess) <= 1e-12 * std::max(1.0, static_cast<double>(params_.k))) {
    double rising = 1.0;
    for (int i = 0; i < params_.k; ++i) rising *= pole.multiplicity + i;
    const double c = std::abs(f_.laurent_leading(pole));
    return {std::pow(c, 1.0 - params_.alpha) * rising, PoleRegime::equality};
  }
  if (excess > 0.0) return {0.0, PoleRegime::vanishing};
  return {kInf, PoleRegime::infinite};
}

ExtendedValue MartyQuotient::operator()(cplx z) const {
  if (auto pole = f_.pole_near(z, kNearPoleDistance)) return at_pole(*pole);
  const cplx dk = dk_(z).value();
  if (dk == cplx{}) return {0.0, PoleRegime::regular};
  const double af = std::abs(f_(z).value());
  const double log_den = af == 0.0 ? 0.0 : softplus(params_.alpha * std::log(af));
  return {std::exp(std::log(std::abs(dk)) - log_den), PoleRegime::regular};
}

ExtendedValue marty_quotient(const RationalFunction& f, const MartyParams& params, cplx z) {
  return MartyQuotient(f, params)(z);
}

double sup_on_disk(const RationalFunction& f, const MartyParams& params, cplx center, double radius,
                   int resolution) {
  if (resolution < 8) throw PreconditionError("sup_on_disk: resolution must be >= 8");
  if (!(radius > 0.0)) throw PreconditionError("sup_on_disk: radius must be positive");
  const MartyQuotient q(f, params);

  double best = 0.0;
  for (const auto& pole : f.poles()) {
    if (std::abs(pole.location - center) > radius) continue;
    const ExtendedValue v = q.at_pole(pole);
    if (v.is_infinite()) return kInf;
    best = std::max(best, v.value);
  }

  const double two_pi = 2.0 * std::numbers::pi;
  auto at = [&](double rho, double theta) { return q(center + std::polar(rho, theta)).value; };

  double best_rho = 0.0;
  double best_theta = 0.0;
  double grid_best = at(0.0, 0.0);
  for (int j = 1; j <= resolution; ++j) {
    const double rho = radius * j / resolution;
    for (int i = 0; i < resolution; ++i) {
      const double theta = two_pi * i / resolution;
      const double v = at(rho, theta);
      if (v > grid_best) {
        grid_best = v;
        best_rho = rho;
        best_theta = theta;
      }
    }
  }

  // Pattern search around the grid maximum, steps halved on failure.
  double step_rho = radius / resolution;
  double step_theta = two_pi / resolution;
  for (int iter = 0; iter < 400 && step_rho > radius * 1e-12; ++iter) {
    bool moved = false;
    const double candidates[4][2] = {{best_rho + step_rho, best_theta},
                                     {best_rho - step_rho, best_theta},
                                     {best_rho, best_theta + step_theta},
                                     {best_rho, best_theta - step_theta}};
    for (const auto& c : candidates) {
      const double rho = std::clamp(c[0], 0.0, radius);
      const double v = at(rho, c[1]);
      if (v > grid_best) {
        grid_best = v;
        best_rho = rho;
        best_theta = c[1];
        moved = true;
      }
    }
    if (!moved) {
      step_rho *= 0.5;
      step_theta *= 0.5;
    }
  }
  return std::max(best, grid_best);
}

}  // namespace marty
