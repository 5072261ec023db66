#pragma once

#include <Eigen/Core>

namespace muscl {

/// Largest number of state components (3D Euler).
constexpr int kMaxComponents = 5;

/// Short state vector with inline storage.
using State = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxComponents, 1>;

}  // namespace muscl
