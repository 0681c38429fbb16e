#pragma once

#include <memory>
#include <optional>
#include <utility>

#include "marty/polynomial.hpp"
#include "marty/roots.hpp"

namespace marty {

/// Value of a function at a point, or the marker that the point is a pole.
class PointValue {
 public:
  explicit PointValue(cplx v) : value_(v) {}
  static PointValue pole() { return PointValue(); }

  bool is_pole() const { return !value_.has_value(); }
  /// Throws PreconditionError at a pole.
  cplx value() const;

 private:
  PointValue() = default;
  std::optional<cplx> value_;
};

/// Tolerances shared by every rational-function operation.
struct RationalOptions {
  FindRootsOptions roots{};
  /// Numerator divisibility test used for cancellation when the numerator's
  /// zeros are not known: |N(b)| <= cancel_tol * sum |a_i||b|^i.
  double cancel_tol = 1e-9;
};

/// Rational function num/den in reduced form with monic denominator.
///
/// The denominator is carried by its pole list, so derivatives and products
/// never refactor it. Numerator zeros are known when the function was built
/// from factors and computed on first request otherwise; copies share that
/// cache.
class RationalFunction {
 public:
  /// The zero function.
  RationalFunction();
  /// Reduces num/den by root-level cancellation. Throws PreconditionError if
  /// den is identically zero.
  RationalFunction(const Polynomial& num, const Polynomial& den, const RationalOptions& options = {});

  static RationalFunction constant(cplx c);
  static RationalFunction polynomial(Polynomial p);
  /// z
  static RationalFunction identity();
  /// lead * prod (z - a)^m / prod (z - b)^mu, with coincident zeros and poles cancelled.
  static RationalFunction from_factors(cplx lead, const RootList& zeros, const RootList& poles,
                                       const RationalOptions& options = {});

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  const RootList& poles() const { return poles_; }
  /// Zeros of the numerator; runs find_roots on first use if not known.
  const RootList& zeros() const;
  bool zeros_known() const;
  const RationalOptions& options() const { return options_; }

  bool is_zero() const { return num_.is_zero(); }
  bool has_poles() const { return !poles_.empty(); }
  bool is_constant() const { return poles_.empty() && num_.degree() <= 0; }

  PointValue evaluate(cplx z) const;
  PointValue operator()(cplx z) const { return evaluate(z); }

  /// Exact k-th derivative in reduced form.
  RationalFunction derivative(int order = 1) const;
  /// 1/f. Throws PreconditionError for the zero function.
  RationalFunction reciprocal() const;
  /// f^e for any integer e (negative exponents go through reciprocal()).
  RationalFunction pow(int exponent) const;

  /// c_0..c_order with f(z + t) = sum c_j t^j + O(t^(order+1)), from the
  /// factored form when the zeros are known. Throws PreconditionError at a pole.
  std::vector<cplx> taylor_at(cplx z, int order) const;

  /// (f'/f)^(order)(z) from the partial-fraction sum over zeros and poles;
  /// pole marker at a zero or pole of f.
  PointValue log_derivative_at(cplx z, int order) const;

  /// (zeros of num, poles). Throws PreconditionError for the zero function.
  std::pair<RootList, RootList> zeros_poles() const;

  /// c with f(z) ~ c (z - b)^(-mu) near the pole b of multiplicity mu.
  cplx laurent_leading(const Root& pole) const;

  /// Closest pole within distance tol of z, if any.
  std::optional<Root> pole_near(cplx z, double tol) const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, cplx c);
  friend RationalFunction operator*(cplx c, const RationalFunction& a) { return a * c; }
  RationalFunction operator-() const { return *this * cplx{-1.0}; }

 private:
  struct ZeroCache;

  RationalFunction(Polynomial num, RootList poles, std::optional<RootList> zeros, RationalOptions options);

  cplx eval_num(cplx z) const;

  Polynomial num_;
  Polynomial den_;
  RootList poles_;
  RationalOptions options_;
  std::shared_ptr<ZeroCache> zeros_;
};

/// Relative-tolerance comparison of two rational functions: same pole
/// structure and numerator coefficients within rel_tol * ||num||_1.
bool approx_equal(const RationalFunction& a, const RationalFunction& b, double rel_tol);

}  // namespace marty
