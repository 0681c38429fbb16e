#pragma once

#include <vector>

#include "marty/error.hpp"
#include "marty/polynomial.hpp"

namespace marty {

struct Root {
  cplx location;
  int multiplicity = 1;
};

/// Distinct roots with multiplicities, ordered lexicographically by
/// (real, imaginary) part.
class RootList {
 public:
  RootList() = default;
  explicit RootList(std::vector<Root> entries);

  const std::vector<Root>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  const Root& operator[](std::size_t i) const { return entries_[i]; }

  /// Sum of multiplicities.
  int total_multiplicity() const;

  /// Multiplicity-weighted count of entries with |location - center| <= radius.
  int count_in_closed_disk(cplx center, double radius) const;

  /// Merges two lists, adding multiplicities of locations within
  /// rel_tol * max(1, |location|) of each other.
  RootList merged_with(const RootList& other, double rel_tol) const;

  /// Multiplies every multiplicity by factor.
  RootList scaled(int factor) const;

  /// prod (z - a)^m
  Polynomial expand() const;

 private:
  std::vector<Root> entries_;
};

struct FindRootsOptions {
  /// Backward-error tolerance: accept a root when |p(z)| <= tol * sum |a_i||z|^i.
  double tol = 1e-12;
  /// Roots closer than cluster_rel_tol * max(1, |z|) always merge.
  double cluster_rel_tol = 1e-6;
  /// Taylor-coefficient test used to accept wider clusters of multiple roots.
  double multiplicity_tol = 1e-9;
  int max_iterations = 500;
};

/// Root iteration failed to converge. partial() holds the last iterates,
/// each with multiplicity 1.
class RootFindingError : public Error {
 public:
  RootFindingError(const std::string& what, RootList partial)
      : Error(what), partial_(std::move(partial)) {}
  const RootList& partial() const { return partial_; }

 private:
  RootList partial_;
};

/// All roots of p with multiplicities (Aberth-Ehrlich iteration followed by
/// cluster detection). Exact zero low-order coefficients are reported as an
/// exact root at 0. Throws PreconditionError for the zero polynomial.
RootList find_roots(const Polynomial& p, const FindRootsOptions& options = {});

}  // namespace marty
