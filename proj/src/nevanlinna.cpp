#include "marty/nevanlinna.hpp"

#include <cmath>
#include <sstream>

namespace marty {

namespace {

constexpr double kBasePointGuard = 1e-9;

std::string describe(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

void require_base_point(double r, cplx alpha) {
  if (!(r > 0.0)) throw PreconditionError("radius must be positive");
  if (!(std::abs(alpha) < r)) throw PreconditionError("base point must satisfy |alpha| < r");
}

void require_clear(const RootList& points, bool poles, double r, double clearance) {
  for (const auto& p : points) {
    if (std::abs(std::abs(p.location) - r) < clearance)
      throw ClearanceError(std::string(poles ? "pole " : "zero ") + describe(p.location) +
                               " lies within the clearance of the circle |z| = " + std::to_string(r),
                           p.location, poles);
  }
}

void require_not_pole(const RationalFunction& f, cplx alpha) {
  if (f.pole_near(alpha, kBasePointGuard))
    throw PreconditionError("base point " + describe(alpha) + " is a pole of f");
}

}  // namespace

double poisson_kernel(double r, double t, cplx alpha) {
  const cplx w = std::polar(r, t);
  return (r * r - std::norm(alpha)) / std::norm(w - alpha);
}

PeriodicQuadrature<double> proximity_m_alpha(const RationalFunction& f, double r, cplx alpha,
                                             const QuadratureSpec& spec) {
  require_base_point(r, alpha);
  spec.validate();
  const double clearance = spec.clearance(r);
  require_clear(f.poles(), true, r, clearance);
  if (!f.is_zero()) require_clear(f.zeros(), false, r, clearance);

  auto integrand = [&](double t) {
    const double v = std::abs(f(std::polar(r, t)).value());
    return v > 1.0 ? std::log(v) * poisson_kernel(r, t, alpha) : 0.0;
  };
  return periodic_mean<double>(integrand, spec);
}

double counting_N_alpha(const RationalFunction& f, double r, cplx alpha, std::optional<double> clearance) {
  require_base_point(r, alpha);
  require_not_pole(f, alpha);
  require_clear(f.poles(), true, r, clearance.value_or(1e-3 * r));
  double total = 0.0;
  for (const auto& b : f.poles()) {
    if (std::abs(b.location) >= r) continue;
    total += b.multiplicity * std::log(std::abs((r * r - std::conj(b.location) * alpha) / (r * (alpha - b.location))));
  }
  return total;
}

NevanlinnaEval characteristic_T_alpha(const RationalFunction& f, double r, cplx alpha, const QuadratureSpec& spec) {
  const auto m = proximity_m_alpha(f, r, alpha, spec);
  NevanlinnaEval out;
  out.m_alpha = m.value;
  out.n_alpha = counting_N_alpha(f, r, alpha, spec.clearance(r));
  out.t_alpha = out.m_alpha + out.n_alpha;
  out.quad_error_estimate = m.error_estimate;
  out.nodes_used = m.nodes_used;
  return out;
}

double check_first_fundamental(const RationalFunction& f, double r, cplx alpha, const QuadratureSpec& spec) {
  if (f.is_zero()) throw PreconditionError("first fundamental theorem: f is identically zero");
  require_base_point(r, alpha);
  require_not_pole(f, alpha);
  for (const auto& a : f.zeros())
    if (std::abs(a.location - alpha) <= kBasePointGuard)
      throw PreconditionError("base point " + describe(alpha) + " is a zero of f");

  const NevanlinnaEval direct = characteristic_T_alpha(f, r, alpha, spec);
  const NevanlinnaEval inverse = characteristic_T_alpha(f.reciprocal(), r, alpha, spec);
  return inverse.t_alpha - direct.t_alpha + std::log(std::abs(f(alpha).value()));
}

double check_counting_inequality(const RationalFunction& f, double r, double R, cplx alpha,
                                 std::optional<double> clearance) {
  const double a = std::abs(alpha);
  if (!(a < r && r < R && R < 1.0)) throw PreconditionError("counting inequality requires |alpha| < r < R < 1");
  const double n_inner = count_n(f, r, std::nullopt, clearance.value_or(1e-3 * r));
  const double lhs = n_inner * (R - r) * (R - a) / (R * R + r * a);
  const double rhs = counting_N_alpha(f, R, alpha, clearance.value_or(1e-3 * R)) -
                     counting_N_alpha(f, r, alpha, clearance.value_or(1e-3 * r));
  return rhs - lhs;
}

int count_n(const RationalFunction& f, double r, std::optional<cplx> c, std::optional<double> clearance) {
  if (!(r > 0.0)) throw PreconditionError("radius must be positive");
  const double clear = clearance.value_or(1e-3 * r);
  if (!c) {
    require_clear(f.poles(), true, r, clear);
    return f.poles().count_in_closed_disk(cplx{}, r);
  }
  const RationalFunction shifted = f - RationalFunction::constant(*c);
  if (shifted.is_zero()) throw PreconditionError("count_n: f is identically equal to c");
  require_clear(shifted.zeros(), false, r, clear);
  return shifted.zeros().count_in_closed_disk(cplx{}, r);
}

}  // namespace marty
