#pragma once

#include "muscl/mesh/mesh.hpp"
#include "muscl/physics/state.hpp"

#include <stdexcept>

namespace muscl::euler {

constexpr double kGamma = 1.4;

class NonPhysicalStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Density, velocity (unused components zero) and pressure.
struct PrimitiveState {
  double rho = 1.0;
  Point v = Point::Zero();
  double p = 1.0;
};

/// Conserved U = (rho, rho v, E) in d dimensions; size d + 2.
State to_conserved(const PrimitiveState& w, int dim, double gamma = kGamma);
PrimitiveState to_primitive(const State& u, int dim, double gamma = kGamma);

double pressure(const State& u, int dim, double gamma = kGamma);
double sound_speed(double rho, double p, double gamma = kGamma);
bool is_physical(const State& u, int dim, double gamma = kGamma);

/// Variables the reconstruction limits componentwise.
enum class LimitingVariables {
  /// (rho, v, E), the primitive vector of the positivity-preserving variant.
  rho_velocity_energy,
  /// (rho, v, p).
  rho_velocity_pressure,
};

State to_limiting(const State& u, int dim, LimitingVariables vars, double gamma = kGamma);
State from_limiting(const State& w, int dim, LimitingVariables vars, double gamma = kGamma);

/// Rows of the convective flux: F(U) in R^{(d+2) x d}, stored row-major with
/// rows (rho v; rho v (x) v + p I; (E + p) v).
Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxComponents, 3> flux(const State& u, int dim,
                                                                                  double gamma = kGamma);

/// F(U) . normal.
State normal_flux(const State& u, const Point& normal, int dim, double gamma = kGamma);

}  // namespace muscl::euler
