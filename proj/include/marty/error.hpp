#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace marty {

using cplx = std::complex<double>;

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A zero or pole sits too close to an evaluation circle.
class ClearanceError : public PreconditionError {
 public:
  ClearanceError(const std::string& what, cplx offending, bool is_pole)
      : PreconditionError(what), offending_(offending), is_pole_(is_pole) {}

  cplx offending() const { return offending_; }
  bool is_pole() const { return is_pole_; }

 private:
  cplx offending_;
  bool is_pole_;
};

/// A zero has smaller multiplicity than an operation requires.
class MultiplicityError : public PreconditionError {
 public:
  MultiplicityError(const std::string& what, cplx location, int multiplicity)
      : PreconditionError(what), location_(location), multiplicity_(multiplicity) {}

  cplx location() const { return location_; }
  int multiplicity() const { return multiplicity_; }

 private:
  cplx location_;
  int multiplicity_;
};

/// A quantity that should be holomorphic on a region has a pole there.
class HolomorphyError : public Error {
 public:
  HolomorphyError(const std::string& what, cplx pole, int order)
      : Error(what), pole_(pole), order_(order) {}

  cplx pole() const { return pole_; }
  int order() const { return order_; }

 private:
  cplx pole_;
  int order_;
};

/// An iterative method hit its cap. Carries the best estimate reached.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double last_change)
      : Error(what), best_estimate_(best_estimate), last_change_(last_change) {}

  double best_estimate() const { return best_estimate_; }
  double last_change() const { return last_change_; }

 private:
  double best_estimate_;
  double last_change_;
};

}  // namespace marty
