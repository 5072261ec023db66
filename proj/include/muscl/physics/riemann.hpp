#pragma once

#include "muscl/physics/euler.hpp"

#include <stdexcept>

namespace muscl::euler {

class VacuumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Wave { shock, rarefaction };

/// Exact solution of the 1D Euler Riemann problem along x1; transverse
/// velocity components are advected with the contact.
struct RiemannSolution {
  PrimitiveState left;
  PrimitiveState right;
  double gamma = kGamma;
  double p_star = 0.0;
  double u_star = 0.0;
  double rho_star_left = 0.0;
  double rho_star_right = 0.0;
  Wave left_wave = Wave::rarefaction;
  Wave right_wave = Wave::rarefaction;
  int newton_iterations = 0;

  /// Speeds bounding each wave: shock speed (both entries equal) or
  /// rarefaction head/tail.
  double left_head() const;
  double left_tail() const;
  double right_head() const;
  double right_tail() const;
};

/// Newton iteration on the pressure function, started from the
/// two-rarefaction guess with a 1e-12 floor, converged to a 1e-12 residual.
/// Throws VacuumError when the data generate vacuum.
RiemannSolution exact_riemann_euler(const PrimitiveState& left, const PrimitiveState& right,
                                    double gamma = kGamma);

/// Self-similar solution at xi = x / t.
PrimitiveState sample_riemann(const RiemannSolution& sol, double xi);

/// Pressure function f(p) = f_L(p) + f_R(p) + u_R - u_L whose root is p*.
double riemann_pressure_function(const PrimitiveState& left, const PrimitiveState& right, double p,
                                 double gamma = kGamma);

}  // namespace muscl::euler
