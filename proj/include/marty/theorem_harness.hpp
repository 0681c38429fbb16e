#pragma once

#include <limits>
#include <string>
#include <vector>

#include "marty/blaschke.hpp"
#include "marty/marty_quantities.hpp"
#include "marty/rational.hpp"

namespace marty {

// Scenario-level checks of the convergence, boundedness and sharpness
// statements on concrete rational families, and of the estimate chain for
// g^k [(g'/g)^(k-1)]^m.

enum class FamilyKind {
  power_pole,     // 1/z^p, independent of n
  shifted_power,  // (z - base)^n
  scaled_zero,    // z^(m-1) / n
  scaled_pole,    // n / z^(p-1)
  custom,         // one caller-supplied function per index
};

const char* to_string(FamilyKind kind);
/// Accepts the names returned by to_string; throws PreconditionError otherwise.
FamilyKind family_kind_from_string(const std::string& name);

struct FamilySpec {
  FamilyKind kind = FamilyKind::custom;
  /// p for the pole families, m for scaled_zero.
  int param = 1;
  cplx base{3.0};
  std::vector<int> indices;
  /// Parallel to indices for FamilyKind::custom.
  std::vector<RationalFunction> custom;

  /// The member for indices[i].
  RationalFunction member(std::size_t i) const;
  void validate() const;
};

struct Disk {
  cplx center{};
  double radius = 0.5;
};

enum class Verdict { converges_to_zero, diverges, inconclusive };
const char* to_string(Verdict verdict);

/// Finite-index surrogates for limits.
struct ConvergenceThresholds {
  /// sup below this at the last index counts as zero.
  double zero_sup = 1e-8;
  /// |fitted log-log slope| must exceed this to count as a trend.
  double slope_tol = 1e-2;
  /// min |f_n| on the disk at the last index above this counts as infinity.
  double infinity = 1e6;
  /// Polar grid resolution for sups and minima.
  int grid = 64;
};

struct ConvergenceReport {
  std::vector<int> indices;
  std::vector<double> sups;
  /// Least-squares slope of log sup against log n; NaN when not fittable.
  double slope = std::numeric_limits<double>::quiet_NaN();
  Verdict verdict = Verdict::inconclusive;
};

/// Least-squares slope of log(y) against log(x) over the positive y values;
/// NaN with fewer than `min_points` of them.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, std::size_t min_points = 2);

/// Verdict from a sup sequence under the thresholds.
ConvergenceReport classify(std::vector<int> indices, std::vector<double> sups, const ConvergenceThresholds& thresholds);

/// (g^(k))^m / g^(m-k), reduced.
RationalFunction zero_quotient(const RationalFunction& g, int k, int m);
/// (f^(k))^p / f^(p+k), reduced.
RationalFunction pole_quotient(const RationalFunction& f, int k, int p);
/// g^k [(g'/g)^(k-1)]^m, reduced.
RationalFunction log_derivative_power(const RationalFunction& g, int k, int m);

/// Throws HolomorphyError naming the first pole of q in the closed disk.
void require_holomorphic(const RationalFunction& q, const Disk& disk, const std::string& what);

/// Max of |q| over a polar grid of the closed disk; q must be pole-free there.
double grid_sup_abs(const RationalFunction& q, const Disk& disk, int grid);

/// Holomorphy of every quotient is checked first (HolomorphyError), then
/// zero multiplicities >= m on the disk (MultiplicityError), then that
/// sup |g_n| -> 0 (PreconditionError).
ConvergenceReport theorem2a_check(const FamilySpec& family, int k, int m, const Disk& disk,
                                  const ConvergenceThresholds& thresholds = {});

/// As theorem2a_check for d_n = (f_n^(k))^p / f_n^(p+k), with pole
/// multiplicities >= p and min |f_n| -> infinity as preconditions.
ConvergenceReport theorem2b_check(const FamilySpec& family, int k, int p, const Disk& disk,
                                  const ConvergenceThresholds& thresholds = {});

/// Smallest integer >= k / (alpha - 1).
int required_pole_multiplicity(int k, double alpha);

enum class Boundedness { bounded, unbounded, inconclusive };
const char* to_string(Boundedness b);

struct BoundednessScan {
  std::vector<int> indices;
  std::vector<double> sups;
  int required_multiplicity = 0;
  /// Poles in the disk with multiplicity below required_multiplicity.
  std::vector<std::string> warnings;
  Boundedness verdict = Boundedness::inconclusive;
};

/// Per-index sup of |f^(k)|/(1+|f|^alpha) on the disk. Throws
/// PreconditionError for alpha <= 1.
BoundednessScan theorem1_scan(const FamilySpec& family, int k, double alpha, const Disk& disk, int resolution = 64,
                              const ConvergenceThresholds& thresholds = {});

struct SharpnessSample {
  /// Radius |z| (pole example) or index n (shifted example).
  double coordinate = 0.0;
  cplx z{};
  double value = 0.0;
  /// Displayed lower bound for the shifted example; NaN otherwise.
  double bound = std::numeric_limits<double>::quiet_NaN();
};

struct SharpnessResult {
  double predicted_slope = std::numeric_limits<double>::quiet_NaN();
  double fitted_slope = std::numeric_limits<double>::quiet_NaN();
  std::vector<SharpnessSample> samples;
  bool above_bound = true;
  bool diverges = false;

  double relative_error() const { return std::abs(fitted_slope - predicted_slope) / std::abs(predicted_slope); }
};

/// f = 1/z^p near 0 with p < k/(alpha-1): fit of log F against log |z| over
/// the radii, compared with (alpha-1) p - k.
SharpnessResult sharpness_power_pole(int k, double alpha, int p,
                                     std::vector<double> radii = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6});

/// f_n = (z-3)^n with 0 < alpha <= 1 at fixed points: every value must exceed
/// (1/2)(n-k)^k |z-3|^(n(1-alpha)-k) and increase with n.
SharpnessResult sharpness_shifted_power(int k, double alpha, const std::vector<int>& n_range,
                                        const std::vector<cplx>& points);

/// Ten fixed points spread over the unit disk.
std::vector<cplx> default_sharpness_points();

/// Worst normalized margin (rhs - lhs) / max(|rhs|, |lhs|) of a pointwise inequality.
struct InequalityMargin {
  double worst_relative = std::numeric_limits<double>::infinity();
  double lhs_at_worst = 0.0;
  double rhs_at_worst = 0.0;
  int points = 0;

  void add(double lhs, double rhs);
  bool applicable() const { return points > 0; }
  bool holds(double rel_tol) const { return !applicable() || worst_relative >= -rel_tol; }
};

struct EstimateChainReport {
  double x0 = 0.0;
  int zeros_in_s = 0;
  InequalityMargin poisson;          // |(h'/h)^(k-1)| <= 2 k! / (s-r)^(k+1) log(1/|h(0)|)
  InequalityMargin blaschke_sum;     // |(B'/B)^(k-1)| <= (k-1)! (n/(s-r)^k + sum m_j/|z-a_j|^k)
  InequalityMargin combined;         // |(g'/g)^(k-1)| <= 6 k! 2^k/(s-r)^(k+1) log(1/|h(0)|) n sum m_j/|z-a_j|^k
  InequalityMargin nearest_zero;     // |Q| <= |h/B_*|^k (6 k! 2^k/(s-r)^(2k+1) log(1/|h(0)|))^m n^(2m)
  InequalityMargin zero_count;       // n <= m + log(|B_*(z)|/|h(z)|)/(s-r)^2
  InequalityMargin pointwise;        // |Q| <= |h|^k (6 k! 2^k/(s-r)^(2k+1) log(1/|h(0)|))^m (m + log(1/|h|)/(s-r)^2)^(2m)
  InequalityMargin harnack_form;     // as pointwise with 12 s k! 2^k/(s-r)^(2k+2) log(1/|h|)
  InequalityMargin zero_free;        // |Q| <= |h|^k (2 k!/(s-r)^(k+1) log(1/|h(0)|))^m when no zero in |z| < s

  /// (name, margin) pairs in a fixed order.
  std::vector<std::pair<std::string, InequalityMargin>> all() const;
};

/// Q = g^k [(g'/g)^(k-1)]^m against every bound of the estimate chain on a
/// polar grid of |z| <= r. Requires g pole-free on the closed unit disk,
/// every zero in the unit disk of multiplicity >= m, and max |g| on |z| = 1
/// at most x0_threshold(k, m, geom).
EstimateChainReport estimate_chain_check(const RationalFunction& g, int k, int m, const DiskGeometry& geom,
                                         int grid = 24);

/// max |g| over 1024 points of |z| = 1.
double unit_circle_sup(const RationalFunction& g);

/// g scaled so that max |g| on |z| = 1 equals `target`.
RationalFunction rescale_to_sup(const RationalFunction& g, double target);

/// min over a polar grid of |z| <= r of (s+r)/(s-r) log(1/|h(z)|) - log(1/|h(0)|).
/// Requires h zero-free on |z| <= s with |h| < 1 there.
double harnack_check(const RationalFunction& h, const DiskGeometry& geom, int grid = 16);

}  // namespace marty
