#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "marty/error.hpp"

namespace marty {

/// Node-doubling control for trapezoidal quadrature on a circle.
struct QuadratureSpec {
  int initial_nodes = 64;
  double tolerance = 1e-10;
  int max_doublings = 16;
  /// Minimum distance of zeros/poles from an evaluation circle of radius r.
  /// Unset means 1e-3 * r.
  std::optional<double> circle_clearance;

  double clearance(double r) const { return circle_clearance.value_or(1e-3 * r); }
  /// Throws PreconditionError on non-positive fields.
  void validate() const;
};

template <class T>
struct PeriodicQuadrature {
  T value{};
  double error_estimate = 0.0;
  int nodes_used = 0;
  /// |I_2n - I_n| after each doubling, in order.
  std::vector<double> differences;
};

/// (1/2pi) * integral over [0, 2pi) of integrand(t), trapezoidal rule with
/// nested node doubling until successive values differ by less than the
/// tolerance. Summation runs in fixed node order so results are bit-stable.
/// Throws ConvergenceError (carrying |best estimate|) at the doubling cap.
template <class T, class F>
PeriodicQuadrature<T> periodic_mean(F&& integrand, const QuadratureSpec& spec) {
  spec.validate();
  const double two_pi = 2.0 * std::numbers::pi;
  PeriodicQuadrature<T> out;

  int n = spec.initial_nodes;
  T sum{};
  for (int i = 0; i < n; ++i) sum += integrand(two_pi * i / n);
  T current = sum / static_cast<double>(n);

  for (int d = 0; d < spec.max_doublings; ++d) {
    T added{};
    for (int i = 0; i < n; ++i) added += integrand(two_pi * (2 * i + 1) / (2.0 * n));
    sum += added;
    n *= 2;
    const T next = sum / static_cast<double>(n);
    const double diff = std::abs(next - current);
    out.differences.push_back(diff);
    current = next;
    if (diff < spec.tolerance) {
      out.value = current;
      out.error_estimate = diff;
      out.nodes_used = n;
      return out;
    }
  }
  throw ConvergenceError("periodic quadrature did not reach tolerance after " +
                             std::to_string(spec.max_doublings) + " doublings",
                         std::abs(current), out.differences.empty() ? 0.0 : out.differences.back());
}

}  // namespace marty
