#include "muscl/physics/euler.hpp"
#include "muscl/physics/models.hpp"
#include "muscl/physics/riemann.hpp"

#include <doctest.h>

#include <Eigen/Geometry>

#include <cmath>
#include <random>

using namespace muscl;

namespace {

State st(std::initializer_list<double> v) {
  State s(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) s[i++] = x;
  return s;
}

euler::PrimitiveState prim(double rho, double u, double p) { return {rho, Point(u, 0.0, 0.0), p}; }

// independent scalar HLL for the 1D Euler system
std::array<double, 3> hll_reference(double rl, double ul, double pl, double rr, double ur, double pr) {
  const double g = 1.4;
  const double el = pl / (g - 1) + 0.5 * rl * ul * ul;
  const double er = pr / (g - 1) + 0.5 * rr * ur * ur;
  const double cl = std::sqrt(g * pl / rl), cr = std::sqrt(g * pr / rr);
  const double sl = std::min(ul - cl, ur - cr), sr = std::max(ul + cl, ur + cr);
  const std::array<double, 3> UL{rl, rl * ul, el}, UR{rr, rr * ur, er};
  const std::array<double, 3> FL{rl * ul, rl * ul * ul + pl, (el + pl) * ul};
  const std::array<double, 3> FR{rr * ur, rr * ur * ur + pr, (er + pr) * ur};
  std::array<double, 3> out{};
  for (int k = 0; k < 3; ++k) {
    if (sl >= 0) out[k] = FL[k];
    else if (sr <= 0) out[k] = FR[k];
    else out[k] = (sr * FL[k] - sl * FR[k] + sl * sr * (UR[k] - UL[k])) / (sr - sl);
  }
  return out;
}

euler::PrimitiveState random_physical(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> pos(0.05, 5.0);
  std::normal_distribution<double> normal;
  euler::PrimitiveState w{pos(rng), Point::Zero(), pos(rng)};
  for (int a = 0; a < dim; ++a) w.v[a] = 2.0 * normal(rng);
  return w;
}

}  // namespace

TEST_CASE("scalar quadratic and rotation fluxes") {
  CHECK(flux_scalar_quadratic(0.5) == Eigen::Vector2d(0.25, 0.25));
  CHECK(flux_scalar_quadratic(0.0) == Eigen::Vector2d(0.0, 0.0));
  CHECK(flux_scalar_quadratic(-0.2).isApprox(Eigen::Vector2d(0.04, 0.04)));
  CHECK(flux_linear_advection(1.0, Point(0.5, 0.5, 0)).norm() == 0.0);
  CHECK(flux_linear_advection(1.0, Point(1.0, 0.5, 0)).isApprox(Eigen::Vector2d(0.0, 0.5)));
  CHECK(flux_linear_advection(0.0, Point(0.1, 0.9, 0)).norm() == 0.0);
}

TEST_CASE("Euler flux examples") {
  const State sod_left = euler::to_conserved(prim(1, 0, 1), 3);
  CHECK(sod_left[4] == doctest::Approx(2.5));
  const auto f = euler::flux(sod_left, 3);
  CHECK(f.col(0).isApprox((State(5) << 0, 1, 0, 0, 0).finished()));
  const auto g = euler::flux(euler::to_conserved(prim(1, 1, 1), 3), 3);
  CHECK(g(0, 0) == doctest::Approx(1.0));
  CHECK(g(1, 0) == doctest::Approx(2.0));
  CHECK(g(4, 0) == doctest::Approx(4.0));
  // at rest the momentum flux is p I
  const euler::PrimitiveState rest{1.0, Point::Zero(), 0.7};
  const auto h = euler::flux(euler::to_conserved(rest, 2), 2);
  CHECK(h(1, 0) == doctest::Approx(0.7));
  CHECK(h(2, 1) == doctest::Approx(0.7));
  CHECK(h(1, 1) == 0.0);
  CHECK(h(0, 0) == 0.0);
  CHECK(h(3, 1) == 0.0);
}

TEST_CASE("EOS round trip on random states") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10000; ++i) {
    const int dim = 1 + i % 3;
    const auto w = random_physical(rng, dim);
    const State u = euler::to_conserved(w, dim);
    CHECK(std::abs(euler::pressure(u, dim) - w.p) <= 1e-13 * std::max(1.0, w.p) * 10);
    const auto back = euler::to_primitive(u, dim);
    CHECK(back.rho == doctest::Approx(w.rho).epsilon(1e-13));
    CHECK((back.v - w.v).norm() <= 1e-13 * (1.0 + w.v.norm()));
    for (auto vars : {euler::LimitingVariables::rho_velocity_energy, euler::LimitingVariables::rho_velocity_pressure}) {
      const State r = euler::from_limiting(euler::to_limiting(u, dim, vars), dim, vars);
      CHECK((r - u).lpNorm<Eigen::Infinity>() <= 1e-12 * (1.0 + u.lpNorm<Eigen::Infinity>()));
    }
  }
}

TEST_CASE("LLF example and consistency") {
  const ScalarQuadratic model(2);
  const Point n(1, 0, 0);
  // F.n = u^2, lambda = 2
  const State g = num_flux_llf(model, st({0.0}), st({1.0}), Point::Zero(), n, 1.0);
  CHECK(g[0] == doctest::Approx(-0.5));
  const State w = st({0.3});
  CHECK(num_flux_llf(model, w, w, Point::Zero(), n, 2.0)[0] == doctest::Approx(2.0 * 0.09));
}

TEST_CASE("numerical fluxes are exactly antisymmetric") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal;
  const ScalarQuadratic quad(2);
  const auto rot = LinearAdvection::solid_rotation();
  const EulerModel eu(3);
  const LocalLaxFriedrichs llf;
  const Hll hll;
  for (int i = 0; i < 2000; ++i) {
    Point n(normal(rng), normal(rng), normal(rng));
    n.normalize();
    Point n2 = n;
    n2[2] = 0.0;
    n2.normalize();
    const Point x(normal(rng), normal(rng), 0.0);
    const double m = std::abs(normal(rng));
    const State a = st({normal(rng)}), b = st({normal(rng)});
    CHECK((llf(quad, a, b, x, n2, m) + llf(quad, b, a, x, -n2, m)).norm() == 0.0);
    CHECK((llf(rot, a, b, x, n2, m) + llf(rot, b, a, x, -n2, m)).norm() == 0.0);
    const State ua = euler::to_conserved(random_physical(rng, 3), 3);
    const State ub = euler::to_conserved(random_physical(rng, 3), 3);
    CHECK((hll(eu, ua, ub, x, n, m) + hll(eu, ub, ua, x, -n, m)).norm() == 0.0);
    CHECK((llf(eu, ua, ub, x, n, m) + llf(eu, ub, ua, x, -n, m)).norm() == 0.0);
  }
}

TEST_CASE("HLL consistency, supersonic branch and Sod traces") {
  const EulerModel model(1);
  const Point n(1, 0, 0);
  const State u = euler::to_conserved(prim(1.0, 0.3, 1.0), 1);
  CHECK((num_flux_hll(model, u, u, n, 1.0) - euler::normal_flux(u, n, 1)).norm() <= 1e-14);
  // supersonic to the right: left flux is upwind
  const State fast_l = euler::to_conserved(prim(1.0, 5.0, 1.0), 1);
  const State fast_r = euler::to_conserved(prim(0.5, 4.0, 0.4), 1);
  CHECK((num_flux_hll(model, fast_l, fast_r, n, 1.0) - euler::normal_flux(fast_l, n, 1)).norm() == 0.0);

  const State l = euler::to_conserved(prim(1.0, 0.0, 1.0), 1);
  const State r = euler::to_conserved(prim(0.125, 0.0, 0.1), 1);
  const State f = num_flux_hll(model, l, r, n, 1.0);
  const auto ref = hll_reference(1.0, 0.0, 1.0, 0.125, 0.0, 0.1);
  for (int k = 0; k < 3; ++k) CHECK(f[k] == doctest::Approx(ref[k]).epsilon(1e-13));
}

TEST_CASE("HLL rejects non-physical traces") {
  const EulerModel model(1);
  const State bad = st({1.0, 0.0, -1.0});
  const State ok = euler::to_conserved(prim(1, 0, 1), 1);
  CHECK_THROWS_AS(num_flux_hll(model, bad, ok, Point(1, 0, 0), 1.0), euler::NonPhysicalStateError);
}

TEST_CASE("HLL commutes with rotations") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> normal;
  const EulerModel model(3);
  for (int i = 0; i < 500; ++i) {
    const auto wa = random_physical(rng, 3), wb = random_physical(rng, 3);
    Point n(normal(rng), normal(rng), normal(rng));
    n.normalize();
    const Eigen::Matrix3d q =
        Eigen::AngleAxisd(normal(rng), Point(normal(rng), normal(rng), normal(rng)).normalized()).toRotationMatrix();
    const auto rotate = [&](euler::PrimitiveState w) {
      w.v = q * w.v;
      return w;
    };
    const State f = num_flux_hll(model, euler::to_conserved(wa, 3), euler::to_conserved(wb, 3), n, 1.0);
    const State g = num_flux_hll(model, euler::to_conserved(rotate(wa), 3), euler::to_conserved(rotate(wb), 3),
                                 q * n, 1.0);
    CHECK(std::abs(g[0] - f[0]) <= 1e-12 * (1 + std::abs(f[0])));
    CHECK(std::abs(g[4] - f[4]) <= 1e-12 * (1 + std::abs(f[4])));
    const Point mf(f[1], f[2], f[3]), mg(g[1], g[2], g[3]);
    CHECK((q * mf - mg).norm() <= 1e-12 * (1 + mf.norm()));
  }
}

TEST_CASE("exact Riemann solver: trivial data") {
  const auto w = prim(0.7, 0.3, 1.3);
  const auto sol = euler::exact_riemann_euler(w, w);
  CHECK(sol.p_star == doctest::Approx(1.3).epsilon(1e-14));
  CHECK(sol.u_star == doctest::Approx(0.3).epsilon(1e-14));
  for (double xi : {-3.0, 0.0, 0.3, 2.0}) {
    const auto s = euler::sample_riemann(sol, xi);
    CHECK(s.rho == doctest::Approx(0.7));
    CHECK(s.p == doctest::Approx(1.3));
  }
}

TEST_CASE("exact Riemann solver: Sod") {
  const auto sol = euler::exact_riemann_euler(prim(1, 0, 1), prim(0.125, 0, 0.1));
  CHECK(sol.p_star == doctest::Approx(0.30313).epsilon(1e-5));
  CHECK(sol.u_star == doctest::Approx(0.92745).epsilon(1e-5));
  CHECK(std::abs(euler::riemann_pressure_function(prim(1, 0, 1), prim(0.125, 0, 0.1), sol.p_star)) <= 1e-12);
  CHECK(sol.left_wave == euler::Wave::rarefaction);
  CHECK(sol.right_wave == euler::Wave::shock);
  CHECK(euler::sample_riemann(sol, -100).rho == 1.0);
  CHECK(euler::sample_riemann(sol, 100).rho == 0.125);

  // Rankine-Hugoniot across the right shock
  const double s = sol.right_head();
  const double g = sol.gamma;
  const double r1 = sol.rho_star_right, u1 = sol.u_star, p1 = sol.p_star;
  const double r2 = 0.125, u2 = 0.0, p2 = 0.1;
  const double e1 = p1 / (g - 1) + 0.5 * r1 * u1 * u1, e2 = p2 / (g - 1) + 0.5 * r2 * u2 * u2;
  CHECK(std::abs((r1 * u1 - r2 * u2) - s * (r1 - r2)) <= 1e-10);
  CHECK(std::abs((r1 * u1 * u1 + p1 - r2 * u2 * u2 - p2) - s * (r1 * u1 - r2 * u2)) <= 1e-10);
  CHECK(std::abs(((e1 + p1) * u1 - (e2 + p2) * u2) - s * (e1 - e2)) <= 1e-10);
}

TEST_CASE("exact Riemann solver: p123 is symmetric") {
  const auto sol = euler::exact_riemann_euler(prim(1, -2, 0.4), prim(1, 2, 0.4));
  CHECK(std::abs(sol.u_star) <= 1e-12);
  CHECK(sol.p_star > 0.0);
  CHECK(sol.left_wave == euler::Wave::rarefaction);
  CHECK(sol.right_wave == euler::Wave::rarefaction);
  CHECK(euler::sample_riemann(sol, 0.0).rho > 0.0);
}

TEST_CASE("exact Riemann solver: vacuum is reported") {
  CHECK_THROWS_AS(euler::exact_riemann_euler(prim(1, -10, 0.4), prim(1, 10, 0.4)), euler::VacuumError);
}

TEST_CASE("rarefaction fan is isentropic") {
  const auto sol = euler::exact_riemann_euler(prim(1, 0, 1), prim(0.125, 0, 0.1));
  const double k0 = 1.0 / std::pow(1.0, 1.4);
  for (double xi = sol.left_head(); xi <= sol.left_tail(); xi += 0.05) {
    const auto w = euler::sample_riemann(sol, xi);
    CHECK(std::abs(w.p / std::pow(w.rho, 1.4) - k0) <= 1e-10);
  }
}

TEST_CASE("sampled Sod solution conserves mass and energy") {
  // domain [-1, 1] at t = 0.2; no wave reaches the ends, so integrals are constant
  const auto sol = euler::exact_riemann_euler(prim(1, 0, 1), prim(0.125, 0, 0.1));
  const int n = 200000;
  double mass = 0.0, energy = 0.0, momentum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = -1.0 + (i + 0.5) * 2.0 / n;
    const auto w = euler::sample_riemann(sol, x / 0.2);
    const State u = euler::to_conserved(w, 1);
    mass += u[0] * 2.0 / n;
    momentum += u[1] * 2.0 / n;
    energy += u[2] * 2.0 / n;
  }
  CHECK(mass == doctest::Approx(1.125).epsilon(1e-4));
  CHECK(energy == doctest::Approx(2.5 + 0.25).epsilon(1e-4));
  // net pressure force p_L - p_R over time 0.2
  CHECK(momentum == doctest::Approx(0.2 * 0.9).epsilon(1e-4));
}
