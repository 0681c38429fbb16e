#pragma once

// Reference computations for the test suites. None of them call the library
// routine they are compared against.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// High-precision reference values computed once with 30-digit arithmetic.
inline constexpr double kProximity_1_over_z_minus_0_3_r075_base01 = 0.348004688354955688;
inline constexpr double kCharacteristic_3_over_z_minus_0_2_r06_base005 = 2.99573227355399099;
inline constexpr double kProximity_3_over_z_minus_0_2_r06_base005 = 1.63760878940079670;
inline constexpr double kCounting_3_over_z_minus_0_2_r06_base005 = 1.35812348415319430;
inline constexpr double kX0_k1_m1_gap01 = 0.136695425445523858;

/// sum c_i z^i term by term with explicit powers.
inline cplx naive_eval(const std::vector<cplx>& c, cplx z) {
  cplx acc{};
  for (std::size_t i = 0; i < c.size(); ++i) acc += c[i] * std::pow(z, static_cast<int>(i));
  return acc;
}

inline std::vector<cplx> naive_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<cplx> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline std::vector<cplx> naive_derivative(const std::vector<cplx>& c) {
  std::vector<cplx> out;
  for (std::size_t i = 1; i < c.size(); ++i) out.push_back(c[i] * static_cast<double>(i));
  return out;
}

inline std::vector<cplx> from_roots(const std::vector<cplx>& roots) {
  std::vector<cplx> p{1.0};
  for (cplx r : roots) p = naive_mul(p, {-r, 1.0});
  return p;
}

/// (N/D)^(k)(z) on unreduced coefficient lists via (P/D^j)' = (P'D - j P D')/D^(j+1).
inline cplx quotient_rule_derivative(std::vector<cplx> num, const std::vector<cplx>& den, int k, cplx z) {
  const auto dden = naive_derivative(den);
  for (int j = 1; j <= k; ++j) {
    auto a = naive_mul(naive_derivative(num), den);
    auto b = naive_mul(num, dden);
    a.resize(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= static_cast<double>(j) * b[i];
    num = a;
  }
  return naive_eval(num, z) / std::pow(naive_eval(den, z), k + 1);
}

/// Expansion table from the moment-cumulant relation: (log g)^(k) equals
/// sum over partitions with part counts c_j, l = sum c_j, of
/// (-1)^(l-1) (l-1)! k! / prod (j!^c_j c_j!) prod u_j^c_j. The table stores
/// the negated coefficients of the terms with l >= 2.
inline std::map<std::vector<int>, std::int64_t> expansion_table(int k) {
  std::map<std::vector<int>, std::int64_t> out;
  auto fact = [](int n) {
    long double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  std::vector<int> parts;
  auto recurse = [&](auto& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      const int l = static_cast<int>(parts.size());
      if (l < 2) return;
      std::map<int, int> counts;
      for (int p : parts) ++counts[p];
      long double denom = 1;
      for (auto [j, c] : counts) denom *= std::pow(fact(j), c) * fact(c);
      const long double magnitude = fact(l - 1) * fact(k) / denom;
      const long double sign = (l % 2 == 0) ? 1 : -1;
      std::vector<int> sorted(parts.rbegin(), parts.rend());
      out[sorted] = static_cast<std::int64_t>(std::llround(sign * magnitude));
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      parts.push_back(p);
      self(self, remaining - p, p);
      parts.pop_back();
    }
  };
  recurse(recurse, k, k);
  return out;
}

/// log H(x, e^v) - log H(x, 1) for H = (x/y)^k (m + log(y/x)/gap^2)^(2m),
/// written with log1p so that small increments keep full relative accuracy.
inline long double log_h_increment(long double log_inv_x, long double v, int k, int m, long double gap) {
  return -k * v + 2.0L * m * std::log1p(v / (m * gap * gap + log_inv_x));
}

/// True when log H(x, .) rises between consecutive points of the geometric
/// ladder v = 1e-15 * 2^i above y = 1 (up to v ~ 1e4).
inline bool scan_detects_increase(long double x, int k, int m, long double gap) {
  const long double log_inv_x = -std::log(x);
  long double prev = 0.0L;
  for (long double v = 1e-15L; v < 1e4L; v *= 2.0L) {
    const long double cur = log_h_increment(log_inv_x, v, k, m, gap);
    if (cur > prev) return true;
    prev = cur;
  }
  return false;
}

/// Largest x in (0, 1/e] for which the scan sees no increase, by bisection on log x.
inline double monotonicity_threshold(int k, int m, double gap) {
  const long double cap = std::exp(-1.0L);
  if (!scan_detects_increase(cap, k, m, gap)) return static_cast<double>(cap);
  long double lo = std::log(1e-300L);
  long double hi = std::log(cap);
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    if (scan_detects_increase(std::exp(mid), k, m, gap))
      hi = mid;
    else
      lo = mid;
  }
  return static_cast<double>(std::exp(lo));
}

}  // namespace oracle
