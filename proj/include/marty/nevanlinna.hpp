#pragma once

#include <optional>

#include "marty/quadrature.hpp"
#include "marty/rational.hpp"

namespace marty {

// Nevanlinna functionals taken with respect to a base point `alpha` inside
// the disk |z| < r. With alpha = 0 they reduce to the classical m, N and T.

/// m_alpha, N_alpha and T_alpha = m_alpha + N_alpha at one radius.
struct NevanlinnaEval {
  double m_alpha = 0.0;
  double n_alpha = 0.0;
  double t_alpha = 0.0;
  double quad_error_estimate = 0.0;
  int nodes_used = 0;
};

/// Poisson kernel Re((r e^{it} + alpha) / (r e^{it} - alpha)).
double poisson_kernel(double r, double t, cplx alpha);

/// Proximity function: mean of log+|f(r e^{it})| against the Poisson kernel.
/// Throws ClearanceError when a zero or pole lies within the clearance of
/// |z| = r and ConvergenceError at the doubling cap.
PeriodicQuadrature<double> proximity_m_alpha(const RationalFunction& f, double r, cplx alpha,
                                             const QuadratureSpec& spec);

/// Counting function: sum over poles |b| < r of log|(r^2 - conj(b) alpha) / (r (alpha - b))|
/// with multiplicity. `clearance` defaults to 1e-3 r.
double counting_N_alpha(const RationalFunction& f, double r, cplx alpha,
                        std::optional<double> clearance = std::nullopt);

NevanlinnaEval characteristic_T_alpha(const RationalFunction& f, double r, cplx alpha,
                                      const QuadratureSpec& spec);

/// T(r, 1/f) - T(r, f) - log(1/|f(alpha)|); zero up to quadrature error.
double check_first_fundamental(const RationalFunction& f, double r, cplx alpha, const QuadratureSpec& spec);

/// (N(R) - N(r)) - n(r) (R - r)(R - |alpha|) / (R^2 + r |alpha|); nonnegative.
/// Requires |alpha| < r < R < 1.
double check_counting_inequality(const RationalFunction& f, double r, double R, cplx alpha,
                                 std::optional<double> clearance = std::nullopt);

/// Multiplicity-weighted number of poles of f (or, given c, of 1/(f - c)) in
/// the closed disk |z| <= r. Throws ClearanceError for points within the
/// clearance of the circle.
int count_n(const RationalFunction& f, double r, std::optional<cplx> c = std::nullopt,
            std::optional<double> clearance = std::nullopt);

}  // namespace marty
