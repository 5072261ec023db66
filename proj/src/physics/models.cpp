#include "muscl/physics/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace muscl {

namespace {

double normal_sum(const Point& normal, int dim) {
  double s = 0.0;
  for (int a = 0; a < dim; ++a) s += normal[a];
  return s;
}

}  // namespace

Eigen::Vector2d flux_scalar_quadratic(double u) { return {u * u, u * u}; }

State ScalarQuadratic::normal_flux(const State& u, const Point&, const Point& normal) const {
  State f(1);
  f[0] = u[0] * u[0] * normal_sum(normal, dim_);
  return f;
}

double ScalarQuadratic::max_speed(const State& u, const Point&, const Point& normal) const {
  return std::abs(2.0 * u[0] * normal_sum(normal, dim_));
}

LinearAdvection LinearAdvection::constant(int dim, const Point& velocity) {
  return LinearAdvection(dim, [velocity](const Point&) { return velocity; });
}

LinearAdvection LinearAdvection::solid_rotation() {
  return LinearAdvection(2, [](const Point& x) { return Point(0.5 - x.y(), x.x() - 0.5, 0.0); });
}

Eigen::Vector2d flux_linear_advection(double u, const Point& x) {
  return Eigen::Vector2d(0.5 - x.y(), x.x() - 0.5) * u;
}

State LinearAdvection::normal_flux(const State& u, const Point& x, const Point& normal) const {
  const Point v = velocity_(x);
  double vn = 0.0;
  for (int a = 0; a < dim_; ++a) vn += v[a] * normal[a];
  State f(1);
  f[0] = vn * u[0];
  return f;
}

double LinearAdvection::max_speed(const State&, const Point& x, const Point& normal) const {
  const Point v = velocity_(x);
  double vn = 0.0;
  for (int a = 0; a < dim_; ++a) vn += v[a] * normal[a];
  return std::abs(vn);
}

State EulerModel::normal_flux(const State& u, const Point&, const Point& normal) const {
  return euler::normal_flux(u, normal, dim_, gamma_);
}

double EulerModel::max_speed(const State& u, const Point&, const Point& normal) const {
  const auto w = euler::to_primitive(u, dim_, gamma_);
  double vn = 0.0;
  for (int a = 0; a < dim_; ++a) vn += w.v[a] * normal[a];
  return std::abs(vn) + euler::sound_speed(w.rho, std::max(w.p, 0.0), gamma_);
}

State num_flux_llf(const Model& model, const State& inner, const State& outer, const Point& x, const Point& normal,
                   double measure) {
  const State fl = model.normal_flux(inner, x, normal);
  const State fr = model.normal_flux(outer, x, normal);
  const double lambda = std::max(model.max_speed(inner, x, normal), model.max_speed(outer, x, normal));
  return measure * (0.5 * (fl + fr) - 0.5 * lambda * (outer - inner));
}

State num_flux_hll(const EulerModel& model, const State& inner, const State& outer, const Point& normal,
                   double measure) {
  const int dim = model.dim();
  const double gamma = model.gamma();
  if (!euler::is_physical(inner, dim, gamma) || !euler::is_physical(outer, dim, gamma))
    throw euler::NonPhysicalStateError("HLL flux called with a non-physical trace");
  const auto wl = euler::to_primitive(inner, dim, gamma);
  const auto wr = euler::to_primitive(outer, dim, gamma);
  double vl = 0.0;
  double vr = 0.0;
  for (int a = 0; a < dim; ++a) {
    vl += wl.v[a] * normal[a];
    vr += wr.v[a] * normal[a];
  }
  const double cl = euler::sound_speed(wl.rho, wl.p, gamma);
  const double cr = euler::sound_speed(wr.rho, wr.p, gamma);
  const double sl = std::min(vl - cl, vr - cr);
  const double sr = std::max(vl + cl, vr + cr);
  const State fl = euler::normal_flux(inner, normal, dim, gamma);
  const State fr = euler::normal_flux(outer, normal, dim, gamma);
  if (sl >= 0.0) return measure * fl;
  if (sr <= 0.0) return measure * fr;
  // Products grouped so that swapping sides and flipping the normal negates
  // the result bit for bit.
  const State num = (sr * fl - sl * fr) + (sl * sr) * (outer - inner);
  return measure * (num / (sr - sl));
}

State LocalLaxFriedrichs::operator()(const Model& model, const State& inner, const State& outer, const Point& x,
                                     const Point& normal, double measure) const {
  return num_flux_llf(model, inner, outer, x, normal, measure);
}

State Hll::operator()(const Model& model, const State& inner, const State& outer, const Point&,
                      const Point& normal, double measure) const {
  const auto* euler_model = dynamic_cast<const EulerModel*>(&model);
  if (!euler_model) throw std::invalid_argument("HLL flux requires the Euler model");
  return num_flux_hll(*euler_model, inner, outer, normal, measure);
}

std::unique_ptr<NumericalFlux> make_numerical_flux(const std::string& name) {
  if (name == "llf" || name == "lax_friedrichs" || name == "rusanov") return std::make_unique<LocalLaxFriedrichs>();
  if (name == "hll") return std::make_unique<Hll>();
  throw std::invalid_argument("unknown numerical flux '" + name + "'");
}

}  // namespace muscl
