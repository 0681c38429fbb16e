#pragma once

#include <span>
#include <utility>
#include <vector>

#include "marty/error.hpp"

namespace marty {

/// Dense complex polynomial, coefficients in ascending degree.
///
/// The zero polynomial is the empty coefficient list; otherwise the leading
/// coefficient is nonzero. Exact zeros at the top are trimmed on construction.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);
  Polynomial(std::initializer_list<cplx> coeffs);

  static Polynomial constant(cplx c);
  /// z - a
  static Polynomial linear_factor(cplx a);
  static Polynomial monomial(cplx c, int degree);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const cplx> coeffs() const { return coeffs_; }
  cplx operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
  cplx leading() const { return coeffs_.empty() ? cplx{} : coeffs_.back(); }

  cplx evaluate(cplx z) const;
  cplx operator()(cplx z) const { return evaluate(z); }

  /// Sum of |a_i| |z|^i, the natural scale for rounding errors of evaluate(z).
  double evaluation_scale(cplx z) const;
  /// Sum of |a_i|.
  double norm1() const;

  Polynomial derivative(int order = 1) const;

  /// Taylor coefficients t_j = p^(j)(c)/j! for j = 0..degree.
  std::vector<cplx> taylor_coefficients(cplx c) const;

  /// Synthetic division by (z - a). Returns (quotient, remainder).
  std::pair<Polynomial, cplx> deflate(cplx a) const;

  /// Number of exact zero coefficients at the bottom (order of the root at 0).
  int low_order_zeros() const;
  /// Divides by z^count; the bottom coefficients are dropped.
  Polynomial shift_down(int count) const;

  Polynomial pow(int exponent) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(cplx c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, cplx c) { return a *= c; }
  friend Polynomial operator*(cplx c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();

  std::vector<cplx> coeffs_;
};

}  // namespace marty
