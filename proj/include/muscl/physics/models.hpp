#pragma once

#include "muscl/mesh/mesh.hpp"
#include "muscl/physics/euler.hpp"
#include "muscl/physics/state.hpp"

#include <functional>
#include <memory>
#include <string>

namespace muscl {

/// A first-order system d_t u + div F(u, x) = 0.
class Model {
 public:
  virtual ~Model() = default;

  virtual int num_components() const = 0;
  virtual int dim() const = 0;
  virtual std::string name() const = 0;

  /// F(u, x) . normal.
  virtual State normal_flux(const State& u, const Point& x, const Point& normal) const = 0;
  /// Spectral radius of the Jacobian of F . normal.
  virtual double max_speed(const State& u, const Point& x, const Point& normal) const = 0;
  virtual bool is_admissible(const State& /*u*/) const { return true; }
};

/// F(u) = (u^2, u^2); the dimension fixes how many columns are used.
class ScalarQuadratic final : public Model {
 public:
  explicit ScalarQuadratic(int dim = 2) : dim_(dim) {}
  int num_components() const override { return 1; }
  int dim() const override { return dim_; }
  std::string name() const override { return "scalar_quadratic"; }
  State normal_flux(const State& u, const Point& x, const Point& normal) const override;
  double max_speed(const State& u, const Point& x, const Point& normal) const override;

 private:
  int dim_;
};

/// Row of F(u) = (u^2, u^2) at a point.
Eigen::Vector2d flux_scalar_quadratic(double u);

using VelocityField = std::function<Point(const Point&)>;

/// F(u, x) = v(x) u with a prescribed velocity field.
class LinearAdvection final : public Model {
 public:
  LinearAdvection(int dim, VelocityField velocity) : dim_(dim), velocity_(std::move(velocity)) {}

  static LinearAdvection constant(int dim, const Point& velocity);
  /// Counterclockwise rotation about (1/2, 1/2): v = (1/2 - y, x - 1/2).
  static LinearAdvection solid_rotation();

  int num_components() const override { return 1; }
  int dim() const override { return dim_; }
  std::string name() const override { return "linear_advection"; }
  State normal_flux(const State& u, const Point& x, const Point& normal) const override;
  double max_speed(const State& u, const Point& x, const Point& normal) const override;
  Point velocity(const Point& x) const { return velocity_(x); }

 private:
  int dim_;
  VelocityField velocity_;
};

/// Flux row v(x) u of the rotating field.
Eigen::Vector2d flux_linear_advection(double u, const Point& x);

/// Euler equations of an ideal gas, conserved variables (rho, rho v, E).
class EulerModel final : public Model {
 public:
  explicit EulerModel(int dim, double gamma = euler::kGamma) : dim_(dim), gamma_(gamma) {}
  int num_components() const override { return dim_ + 2; }
  int dim() const override { return dim_; }
  double gamma() const { return gamma_; }
  std::string name() const override { return "euler"; }
  State normal_flux(const State& u, const Point& x, const Point& normal) const override;
  double max_speed(const State& u, const Point& x, const Point& normal) const override;
  bool is_admissible(const State& u) const override { return euler::is_physical(u, dim_, gamma_); }

 private:
  int dim_;
  double gamma_;
};

/// Conservative numerical flux integrated over a face:
/// G(uL, uR) ~ int_e F(u) . normal.
class NumericalFlux {
 public:
  virtual ~NumericalFlux() = default;
  virtual std::string name() const = 0;
  virtual State operator()(const Model& model, const State& inner, const State& outer, const Point& x,
                           const Point& normal, double measure) const = 0;
};

/// Local Lax-Friedrichs (Rusanov) flux.
class LocalLaxFriedrichs final : public NumericalFlux {
 public:
  std::string name() const override { return "llf"; }
  State operator()(const Model& model, const State& inner, const State& outer, const Point& x,
                   const Point& normal, double measure) const override;
};

/// HLL flux for EulerModel with direct wave-speed bounds.
class Hll final : public NumericalFlux {
 public:
  std::string name() const override { return "hll"; }
  State operator()(const Model& model, const State& inner, const State& outer, const Point& x,
                   const Point& normal, double measure) const override;
};

State num_flux_llf(const Model& model, const State& inner, const State& outer, const Point& x, const Point& normal,
                   double measure);
State num_flux_hll(const EulerModel& model, const State& inner, const State& outer, const Point& normal,
                   double measure);

std::unique_ptr<NumericalFlux> make_numerical_flux(const std::string& name);

}  // namespace muscl
