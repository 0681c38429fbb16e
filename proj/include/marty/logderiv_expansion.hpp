#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "marty/rational.hpp"

namespace marty {

// Universal expansion of g^(k)/g in the quotients u_j = g^(j)/g:
//
//   g^(k)/g = (g'/g)^(k-1) + sum over partitions (j_1..j_l) of k, l >= 2, of c * u_{j_1} ... u_{j_l}
//
// The integer coefficients come from rewriting (u_1)^(k-1) with u_j' = u_{j+1} - u_1 u_j.

struct ExpansionTerm {
  /// Non-decreasing parts, each >= 1, summing to k.
  std::vector<int> parts;
  std::int64_t coefficient = 0;

  int length() const { return static_cast<int>(parts.size()); }
  friend bool operator==(const ExpansionTerm&, const ExpansionTerm&) = default;
};

struct ExpansionTable {
  int k = 1;
  std::vector<ExpansionTerm> terms;
};

inline constexpr int kMaxExpansionOrder = 12;

/// Cached per k; safe to call from several threads. Throws PreconditionError
/// unless 1 <= k <= kMaxExpansionOrder.
const ExpansionTable& expansion_coefficients(int k);

/// JSON text {"k": k, "terms": [{"l": .., "parts": [..], "coefficient": ..}, ...]}.
std::string expansion_to_json(const ExpansionTable& table);

/// The correction sum S = g^(k)/g - (g'/g)^(k-1) evaluated from the table.
/// Pole marker when g(z) = 0.
PointValue correction_term_S(const RationalFunction& g, int k, cplx z);

struct IdentityResidual {
  double residual = 0.0;
  /// |g^(k)/g| + |(g'/g)^(k-1)| + sum |c| prod |u_j|; the magnitude against
  /// which the residual is judged.
  double scale = 0.0;

  bool within(double tol) const { return residual <= tol * scale; }
};

/// |g^(k)/g - (g'/g)^(k-1) - S| at z: g^(k)/g from the Taylor series of g at z,
/// (g'/g)^(k-1) from partial fractions over the zeros and poles of g.
/// Throws PreconditionError when g(z) = 0.
IdentityResidual check_identity(const RationalFunction& g, int k, cplx z);

}  // namespace marty
