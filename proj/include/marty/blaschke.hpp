#pragma once

#include <vector>

#include "marty/quadrature.hpp"
#include "marty/rational.hpp"

namespace marty {

/// Radii r < s < R inside the unit disk with s the midpoint of r and R.
class DiskGeometry {
 public:
  /// Throws PreconditionError unless 0 < r < R < 1.
  DiskGeometry(double r, double R);

  double r() const { return r_; }
  double s() const { return s_; }
  double R() const { return R_; }
  /// s - r
  double gap() const { return s_ - r_; }

 private:
  double r_;
  double s_;
  double R_;
};

/// G_a(z) = (s^2 - conj(a) z) / (s (z - a)) raised to `multiplicity`;
/// unimodular on |z| = s.
struct BlaschkeFactor {
  cplx a;
  double s = 0.5;
  int multiplicity = 1;

  /// Single factor G_a (multiplicity ignored); pole marker at z = a.
  PointValue eval(cplx z) const;
  /// G_a^multiplicity as a rational function.
  RationalFunction to_rational() const;
};

/// Product of factors as a rational function.
RationalFunction blaschke_product(const std::vector<BlaschkeFactor>& factors);

/// g = h / B where B divides out every zero of g inside |z| < s.
struct BlaschkeSplit {
  double s = 0.5;
  RationalFunction g;
  std::vector<BlaschkeFactor> factors;
  /// g * B with the zero/pole pairs cancelled symbolically.
  RationalFunction h;
};

/// Throws PreconditionError if g is zero or has a pole in |z| <= R, and
/// ClearanceError if a zero of g is within 1e-3 s of |z| = s.
BlaschkeSplit build_split(const RationalFunction& g, const DiskGeometry& geom);

/// Closed form (k-1)! (-conj(a)^k / (s^2 - conj(a) z)^k + (-1)^k / (z - a)^k)
/// of (G_a'/G_a)^(k-1); pole marker at z = a or z = s^2 / conj(a).
PointValue factor_log_derivative(const BlaschkeFactor& factor, int k, cplx z);

struct PoissonLogDerivative {
  cplx quadrature;
  /// (h'/h)^(k-1)(z) from the partial-fraction sum over zeros and poles of h.
  cplx exact;
  double error_estimate = 0.0;
  int nodes_used = 0;
};

/// (h'/h)^(k-1)(z) from the boundary values log|h(s e^{it})|:
/// k!/(2 pi) * integral of log|h(s e^{it})| 2 s e^{it} / (s e^{it} - z)^(k+1) dt.
/// Requires |z| < s and h zero-free on |z| <= s.
PoissonLogDerivative poisson_log_derivative(const BlaschkeSplit& split, int k, cplx z,
                                            const QuadratureSpec& spec);

/// Right side of -2 k! / (s-r)^(k+1) * log|h(0)|.
double poisson_bound(int k, const DiskGeometry& geom, double abs_h0);

struct NearestZeroReduction {
  /// Index into split.factors of the zero nearest to z0.
  std::size_t nearest = 0;
  /// B_*: B with the nearest factor's exponent lowered by m; exhausted factors dropped.
  std::vector<BlaschkeFactor> reduced;
  /// g_* = h / B_*
  RationalFunction g_star;
  double abs_b_star_at_z0 = 1.0;
  /// max |g_*| on a 512-point grid of |z| = R.
  double max_g_star_on_R = 0.0;
};

/// Throws PreconditionError if g(z0) = 0, g has no zero in |z| < s, or a zero
/// of g has multiplicity below m. Ties in distance go to the earlier factor.
NearestZeroReduction nearest_zero_reduction(const BlaschkeSplit& split, const DiskGeometry& geom, cplx z0, int m);

/// Largest x0 <= 1/e such that y -> H(x, y) = (x/y)^k (m + log(y/x)/(s-r)^2)^(2m)
/// is non-increasing on [1, inf) for every x in (0, x0]:
/// x0 = min(1/e, exp(-m (2/k - (s-r)^2))).
double x0_threshold(int k, int m, const DiskGeometry& geom);

/// H(x, y) itself.
double h_function(double x, double y, int k, int m, const DiskGeometry& geom);

}  // namespace marty
