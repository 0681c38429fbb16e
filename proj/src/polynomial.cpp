#include "marty/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace marty {

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial Polynomial::constant(cplx c) { return Polynomial(std::vector<cplx>{c}); }

Polynomial Polynomial::linear_factor(cplx a) { return Polynomial({-a, cplx{1.0}}); }

Polynomial Polynomial::monomial(cplx c, int degree) {
  std::vector<cplx> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
}

cplx Polynomial::evaluate(cplx z) const {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double Polynomial::evaluation_scale(cplx z) const {
  const double az = std::abs(z);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * az + std::abs(*it);
  return acc;
}

double Polynomial::norm1() const {
  double acc = 0.0;
  for (const auto& c : coeffs_) acc += std::abs(c);
  return acc;
}

Polynomial Polynomial::derivative(int order) const {
  if (order <= 0) return *this;
  if (order > degree()) return {};
  std::vector<cplx> out(coeffs_.size() - static_cast<std::size_t>(order));
  for (std::size_t i = 0; i < out.size(); ++i) {
    double falling = 1.0;
    for (int j = 0; j < order; ++j) falling *= static_cast<double>(i + static_cast<std::size_t>(order - j));
    out[i] = coeffs_[i + static_cast<std::size_t>(order)] * falling;
  }
  return Polynomial(std::move(out));
}

std::vector<cplx> Polynomial::taylor_coefficients(cplx c) const {
  // Repeated Horner division by (z - c).
  std::vector<cplx> work = coeffs_;
  const std::size_t n = work.size();
  for (std::size_t j = 0; j + 1 < n; ++j)
    for (std::size_t i = n - 1; i > j; --i) work[i - 1] += c * work[i];
  return work;
}

std::pair<Polynomial, cplx> Polynomial::deflate(cplx a) const {
  if (coeffs_.empty()) return {Polynomial{}, cplx{}};
  const std::size_t n = coeffs_.size();
  std::vector<cplx> q(n - 1);
  cplx carry = coeffs_[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    q[i] = carry;
    carry = coeffs_[i] + carry * a;
  }
  return {Polynomial(std::move(q)), carry};
}

int Polynomial::low_order_zeros() const {
  int count = 0;
  for (const auto& c : coeffs_) {
    if (c != cplx{}) break;
    ++count;
  }
  return count;
}

Polynomial Polynomial::shift_down(int count) const {
  if (count <= 0) return *this;
  if (count >= static_cast<int>(coeffs_.size())) return {};
  return Polynomial(std::vector<cplx>(coeffs_.begin() + count, coeffs_.end()));
}

Polynomial Polynomial::pow(int exponent) const {
  Polynomial result = Polynomial::constant(1.0);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(cplx c) {
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<cplx> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(out));
}

}  // namespace marty
