#include "muscl/physics/riemann.hpp"

#include <algorithm>
#include <cmath>

namespace muscl::euler {

namespace {

struct SideFunction {
  double value;
  double derivative;
};

/// f_K and its derivative for one side (shock branch for p > p_K).
SideFunction side_function(double p, const PrimitiveState& w, double gamma) {
  const double c = sound_speed(w.rho, w.p, gamma);
  if (p > w.p) {
    const double a = 2.0 / ((gamma + 1.0) * w.rho);
    const double b = (gamma - 1.0) / (gamma + 1.0) * w.p;
    const double s = std::sqrt(a / (p + b));
    return {(p - w.p) * s, s * (1.0 - 0.5 * (p - w.p) / (b + p))};
  }
  const double ratio = p / w.p;
  const double e = (gamma - 1.0) / (2.0 * gamma);
  return {2.0 * c / (gamma - 1.0) * (std::pow(ratio, e) - 1.0),
          1.0 / (w.rho * c) * std::pow(ratio, -(gamma + 1.0) / (2.0 * gamma))};
}

double star_density(double p_star, const PrimitiveState& w, double gamma) {
  if (p_star > w.p) {
    const double r = p_star / w.p;
    const double g = (gamma - 1.0) / (gamma + 1.0);
    return w.rho * (r + g) / (g * r + 1.0);
  }
  return w.rho * std::pow(p_star / w.p, 1.0 / gamma);
}

}  // namespace

double riemann_pressure_function(const PrimitiveState& left, const PrimitiveState& right, double p, double gamma) {
  return side_function(p, left, gamma).value + side_function(p, right, gamma).value + (right.v[0] - left.v[0]);
}

RiemannSolution exact_riemann_euler(const PrimitiveState& left, const PrimitiveState& right, double gamma) {
  if (!(left.rho > 0.0 && left.p > 0.0 && right.rho > 0.0 && right.p > 0.0))
    throw NonPhysicalStateError("Riemann data must have positive density and pressure");
  const double cl = sound_speed(left.rho, left.p, gamma);
  const double cr = sound_speed(right.rho, right.p, gamma);
  const double du = right.v[0] - left.v[0];
  if (2.0 / (gamma - 1.0) * (cl + cr) <= du) throw VacuumError("Riemann data generate vacuum");

  const double z = (gamma - 1.0) / (2.0 * gamma);
  double p = std::pow((cl + cr - 0.5 * (gamma - 1.0) * du) / (cl / std::pow(left.p, z) + cr / std::pow(right.p, z)),
                      1.0 / z);
  p = std::max(p, 1e-12);

  RiemannSolution sol;
  sol.left = left;
  sol.right = right;
  sol.gamma = gamma;
  int it = 0;
  for (; it < 100; ++it) {
    const auto fl = side_function(p, left, gamma);
    const auto fr = side_function(p, right, gamma);
    const double f = fl.value + fr.value + du;
    const double step = f / (fl.derivative + fr.derivative);
    const double next = std::max(p - step, 1e-12);
    const bool converged = std::abs(next - p) <= 1e-15 * p;
    p = next;
    if (converged) break;
  }
  sol.newton_iterations = it + 1;
  const auto fl = side_function(p, left, gamma);
  const auto fr = side_function(p, right, gamma);
  sol.p_star = p;
  sol.u_star = 0.5 * (left.v[0] + right.v[0]) + 0.5 * (fr.value - fl.value);
  sol.left_wave = p > left.p ? Wave::shock : Wave::rarefaction;
  sol.right_wave = p > right.p ? Wave::shock : Wave::rarefaction;
  sol.rho_star_left = star_density(p, left, gamma);
  sol.rho_star_right = star_density(p, right, gamma);
  return sol;
}

double RiemannSolution::left_head() const {
  const double c = sound_speed(left.rho, left.p, gamma);
  if (left_wave == Wave::shock) {
    const double r = p_star / left.p;
    return left.v[0] - c * std::sqrt((gamma + 1.0) / (2.0 * gamma) * r + (gamma - 1.0) / (2.0 * gamma));
  }
  return left.v[0] - c;
}

double RiemannSolution::left_tail() const {
  if (left_wave == Wave::shock) return left_head();
  const double c = sound_speed(left.rho, left.p, gamma) * std::pow(p_star / left.p, (gamma - 1.0) / (2.0 * gamma));
  return u_star - c;
}

double RiemannSolution::right_head() const {
  const double c = sound_speed(right.rho, right.p, gamma);
  if (right_wave == Wave::shock) {
    const double r = p_star / right.p;
    return right.v[0] + c * std::sqrt((gamma + 1.0) / (2.0 * gamma) * r + (gamma - 1.0) / (2.0 * gamma));
  }
  return right.v[0] + c;
}

double RiemannSolution::right_tail() const {
  if (right_wave == Wave::shock) return right_head();
  const double c =
      sound_speed(right.rho, right.p, gamma) * std::pow(p_star / right.p, (gamma - 1.0) / (2.0 * gamma));
  return u_star + c;
}

PrimitiveState sample_riemann(const RiemannSolution& sol, double xi) {
  const double g = sol.gamma;
  PrimitiveState out;
  if (xi <= sol.u_star) {
    const auto& w = sol.left;
    out.v = w.v;
    if (xi <= sol.left_head()) return w;
    if (xi >= sol.left_tail()) {
      out.rho = sol.rho_star_left;
      out.v[0] = sol.u_star;
      out.p = sol.p_star;
      return out;
    }
    // Inside the left rarefaction fan.
    const double c = sound_speed(w.rho, w.p, g);
    const double f = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * c) * (w.v[0] - xi);
    out.rho = w.rho * std::pow(f, 2.0 / (g - 1.0));
    out.v[0] = 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * w.v[0] + xi);
    out.p = w.p * std::pow(f, 2.0 * g / (g - 1.0));
    return out;
  }
  const auto& w = sol.right;
  out.v = w.v;
  if (xi >= sol.right_head()) return w;
  if (xi <= sol.right_tail()) {
    out.rho = sol.rho_star_right;
    out.v[0] = sol.u_star;
    out.p = sol.p_star;
    return out;
  }
  const double c = sound_speed(w.rho, w.p, g);
  const double f = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * c) * (w.v[0] - xi);
  out.rho = w.rho * std::pow(f, 2.0 / (g - 1.0));
  out.v[0] = 2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * w.v[0] + xi);
  out.p = w.p * std::pow(f, 2.0 * g / (g - 1.0));
  return out;
}

}  // namespace muscl::euler
