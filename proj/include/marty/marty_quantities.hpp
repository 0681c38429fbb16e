#pragma once

#include <limits>

#include "marty/rational.hpp"

namespace marty {

/// Derivative order k and exponent alpha of the quotient |f^(k)| / (1 + |f|^alpha).
struct MartyParams {
  int k = 1;
  double alpha = 2.0;

  /// Throws PreconditionError unless k >= 1 and alpha > 0.
  void validate() const;
};

/// How a quotient value at a pole was obtained.
enum class PoleRegime {
  regular,    // not at a pole
  vanishing,  // (alpha-1) p > k, extension is 0
  equality,   // (alpha-1) p = k, finite nonzero extension
  infinite,   // (alpha-1) p < k, no finite extension
};

const char* to_string(PoleRegime regime);

/// Nonnegative real or +inf, tagged with the pole regime it came from.
struct ExtendedValue {
  double value = 0.0;
  PoleRegime regime = PoleRegime::regular;

  bool is_infinite() const { return value == std::numeric_limits<double>::infinity(); }
};

/// Points closer than this to a pole take the continuous extension.
inline constexpr double kNearPoleDistance = 1e-9;

/// |f'(z)| / (1 + |f(z)|^2); at (or within kNearPoleDistance of) a pole the
/// value is taken from 1/f.
double spherical_derivative(const RationalFunction& f, cplx z);

/// The quotient with f^(k) precomputed, for repeated evaluation.
class MartyQuotient {
 public:
  MartyQuotient(RationalFunction f, MartyParams params);

  ExtendedValue operator()(cplx z) const;
  /// Continuous extension at a pole from the leading Laurent coefficient.
  ExtendedValue at_pole(const Root& pole) const;

  const RationalFunction& function() const { return f_; }
  const MartyParams& params() const { return params_; }

 private:
  RationalFunction f_;
  RationalFunction dk_;
  MartyParams params_;
};

ExtendedValue marty_quotient(const RationalFunction& f, const MartyParams& params, cplx z);

/// Grid estimate (a lower bound) of the supremum of the quotient over the
/// closed disk: polar grid with `resolution` radii and angles, plus a
/// pattern-search refinement around the best grid point. Returns +inf when a
/// pole in the disk has no finite extension. Requires resolution >= 8.
double sup_on_disk(const RationalFunction& f, const MartyParams& params, cplx center, double radius,
                   int resolution);

}  // namespace marty
