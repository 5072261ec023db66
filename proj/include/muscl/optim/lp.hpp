#pragma once

#include "muscl/optim/qp.hpp"

namespace muscl::optim {

class LpUnboundedError : public OptimError {
 public:
  using OptimError::OptimError;
};

/// Maximizes objective . x subject to the boxed directional rows with a
/// bounded-variable primal simplex on  direction_i . x - s_i = 0,
/// 0 <= s_i <= upper_i, x free.
///
/// The start is the origin vertex (always feasible). Free variables are
/// pivoted into the basis first so the result is a vertex whenever the rows
/// span R^d; afterwards Bland's rule picks entering and leaving variables,
/// which makes the returned optimal vertex a deterministic function of the
/// input. A zero objective returns the origin.
Vec solve_lp(const Vec& objective, const BoxedDirectionalConstraints& cons);

}  // namespace muscl::optim
