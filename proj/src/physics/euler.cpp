#include "muscl/physics/euler.hpp"

#include <cmath>

namespace muscl::euler {

State to_conserved(const PrimitiveState& w, int dim, double gamma) {
  State u(dim + 2);
  u[0] = w.rho;
  double v2 = 0.0;
  for (int a = 0; a < dim; ++a) {
    u[1 + a] = w.rho * w.v[a];
    v2 += w.v[a] * w.v[a];
  }
  u[dim + 1] = w.p / (gamma - 1.0) + 0.5 * w.rho * v2;
  return u;
}

PrimitiveState to_primitive(const State& u, int dim, double gamma) {
  PrimitiveState w;
  w.rho = u[0];
  w.v = Point::Zero();
  double v2 = 0.0;
  for (int a = 0; a < dim; ++a) {
    w.v[a] = u[1 + a] / u[0];
    v2 += w.v[a] * w.v[a];
  }
  w.p = (gamma - 1.0) * (u[dim + 1] - 0.5 * u[0] * v2);
  return w;
}

double pressure(const State& u, int dim, double gamma) {
  double m2 = 0.0;
  for (int a = 0; a < dim; ++a) m2 += u[1 + a] * u[1 + a];
  return (gamma - 1.0) * (u[dim + 1] - 0.5 * m2 / u[0]);
}

double sound_speed(double rho, double p, double gamma) { return std::sqrt(gamma * p / rho); }

bool is_physical(const State& u, int dim, double gamma) {
  return u[0] > 0.0 && std::isfinite(u[0]) && pressure(u, dim, gamma) > 0.0;
}

State to_limiting(const State& u, int dim, LimitingVariables vars, double gamma) {
  State w(dim + 2);
  w[0] = u[0];
  for (int a = 0; a < dim; ++a) w[1 + a] = u[1 + a] / u[0];
  w[dim + 1] = vars == LimitingVariables::rho_velocity_energy ? u[dim + 1] : pressure(u, dim, gamma);
  return w;
}

State from_limiting(const State& w, int dim, LimitingVariables vars, double gamma) {
  State u(dim + 2);
  u[0] = w[0];
  double v2 = 0.0;
  for (int a = 0; a < dim; ++a) {
    u[1 + a] = w[0] * w[1 + a];
    v2 += w[1 + a] * w[1 + a];
  }
  u[dim + 1] = vars == LimitingVariables::rho_velocity_energy ? w[dim + 1]
                                                               : w[dim + 1] / (gamma - 1.0) + 0.5 * w[0] * v2;
  return u;
}

Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxComponents, 3> flux(const State& u, int dim,
                                                                                  double gamma) {
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxComponents, 3> f(dim + 2, dim);
  const double p = pressure(u, dim, gamma);
  for (int b = 0; b < dim; ++b) {
    const double vb = u[1 + b] / u[0];
    f(0, b) = u[1 + b];
    for (int a = 0; a < dim; ++a) f(1 + a, b) = u[1 + a] * vb + (a == b ? p : 0.0);
    f(dim + 1, b) = (u[dim + 1] + p) * vb;
  }
  return f;
}

State normal_flux(const State& u, const Point& normal, int dim, double gamma) {
  const double p = pressure(u, dim, gamma);
  double vn = 0.0;
  for (int a = 0; a < dim; ++a) vn += u[1 + a] * normal[a];
  vn /= u[0];
  State f(dim + 2);
  f[0] = u[0] * vn;
  for (int a = 0; a < dim; ++a) f[1 + a] = u[1 + a] * vn + p * normal[a];
  f[dim + 1] = (u[dim + 1] + p) * vn;
  return f;
}

}  // namespace muscl::euler
