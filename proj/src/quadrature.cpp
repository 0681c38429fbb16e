#include "marty/quadrature.hpp"

namespace marty {

void QuadratureSpec::validate() const {
  if (initial_nodes < 1) throw PreconditionError("QuadratureSpec: initial_nodes must be positive");
  if (!(tolerance > 0.0)) throw PreconditionError("QuadratureSpec: tolerance must be positive");
  if (max_doublings < 1) throw PreconditionError("QuadratureSpec: max_doublings must be positive");
  if (circle_clearance && !(*circle_clearance > 0.0))
    throw PreconditionError("QuadratureSpec: circle_clearance must be positive");
}

}  // namespace marty
