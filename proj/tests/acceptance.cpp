// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include "muscl/bench/bench.hpp"
#include "muscl/optim/qp.hpp"
#include "muscl/parallel.hpp"
#include "muscl/physics/riemann.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace muscl;
using namespace muscl::bench;

namespace {

const std::filesystem::path config_dir = std::filesystem::path(MUSCL_DATA_DIR) / ".." / "configs";

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string eocs(const BenchReport& r) {
  std::string s;
  for (const auto& row : r.rows)
    if (row.eoc) s += (s.empty() ? "" : " ") + fmt("%.2f", *row.eoc);
  return s;
}

BenchConfig config(const std::string& name) {
  BenchConfig c = load_config(config_dir / (name + ".ini"));
  c.workers = default_workers();
  return c;
}

Outcome theorem1() {
  double worst = 0.0;
  long fallbacks = 0;
  for (int d = 1; d <= 3; ++d) {
    const Theorem1Result r = check_theorem1(d, 16, 100, 1, default_workers());
    worst = std::max(worst, r.max_deviation);
    fallbacks += r.solver_fallbacks;
  }
  return {worst <= 1e-10 && fallbacks == 0,
          "d = 1, 2, 3, 16^d cells, 100 trials: max deviation " + fmt("%.2e", worst)};
}

Outcome qp_oracle() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dims(1, 3), rows(1, 8);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int d = dims(rng), m = rows(rng);
    optim::Mat a(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a(i, j) = normal(rng);
    optim::QuadraticObjective obj{a * a.transpose() + 0.5 * optim::Mat::Identity(d, d), optim::Vec(d)};
    for (int i = 0; i < d; ++i) obj.g[i] = 3.0 * normal(rng);
    optim::BoxedDirectionalConstraints cons;
    for (int r = 0; r < m; ++r) {
      optim::Vec dir(d);
      for (int i = 0; i < d; ++i) dir[i] = normal(rng);
      cons.add(dir, unit(rng) < 0.15 ? 0.0 : unit(rng));
    }
    const optim::Vec x = optim::solve_qp_active_set(obj, cons);
    const optim::Vec y = optim::qp_oracle_enumerate(obj, cons);
    worst = std::max(worst, (x - y).lpNorm<Eigen::Infinity>());
  }
  return {worst <= 1e-8, "10^4 instances: max |x - x_oracle| " + fmt("%.2e", worst)};
}

Outcome manufactured_triangles() {
  const BenchReport qp = run_convergence_study(config("manufactured_triangles_qp"));
  const BenchReport lsf = run_convergence_study(config("manufactured_triangles_lsf_limited"));
  const std::size_t n = qp.rows.size();
  bool ok = n >= 3 && lsf.rows.size() == n;
  for (std::size_t k = n - 2; ok && k < n; ++k) ok = *qp.rows[k].eoc >= 1.5;
  for (std::size_t k = 1; ok && k < n; ++k) ok = *lsf.rows[k].eoc <= 1.4;
  for (std::size_t k = 0; ok && k < n; ++k)
    if (qp.rows[k].elements >= 492) ok = qp.rows[k].l1_error < lsf.rows[k].l1_error;
  return {ok, std::to_string(qp.rows.front().elements) + " to " + std::to_string(qp.rows.back().elements) +
                  " triangles: QP EOC " + eocs(qp) + ", limited LSF EOC " + eocs(lsf) + ", finest errors " +
                  fmt("%.3e", qp.rows.back().l1_error) + " vs " + fmt("%.3e", lsf.rows.back().l1_error)};
}

Outcome manufactured_checkerboard() {
  const BenchReport qp = run_convergence_study(config("manufactured_checkerboard_qp"));
  const BenchReport lp = run_convergence_study(config("manufactured_checkerboard_lp"));
  const std::size_t n = qp.rows.size();
  bool ok = n == 4 && lp.rows.size() == n;
  double spread = 0.0;
  for (std::size_t k = 0; ok && k < n; ++k) {
    spread = std::max(spread, std::abs(lp.rows[k].l1_error - qp.rows[k].l1_error) / qp.rows[k].l1_error);
  }
  ok = ok && spread <= 0.10 && *qp.rows[2].eoc >= 1.3 && *lp.rows[2].eoc >= 1.3;
  return {ok, std::to_string(qp.rows.front().elements) + " to " + std::to_string(qp.rows.back().elements) +
                  " cells: QP EOC " + eocs(qp) + ", LP EOC " + eocs(lp) + ", max relative gap " +
                  fmt("%.1f%%", 100.0 * spread)};
}

Outcome rotation() {
  BenchConfig c = config("rotation_qp");
  c.admissibility_sample_rate = 0.05;
  const LevelResult coarse = run_level(c, 0);
  const LevelResult fine = run_level(c, 1);
  const double violation = std::max(coarse.run.max_admissibility_violation, fine.run.max_admissibility_violation);
  const bool ok = fine.row.l1_error < coarse.row.l1_error && violation <= 1e-10 &&
                  coarse.run.admissibility_checks > 0 && fine.run.admissibility_checks > 0;
  return {ok, std::to_string(coarse.row.elements) + "/" + std::to_string(fine.row.elements) +
                  " triangles at t = 2 pi: errors " + fmt("%.3e", coarse.row.l1_error) + " -> " +
                  fmt("%.3e", fine.row.l1_error) + ", " +
                  std::to_string(coarse.run.admissibility_checks + fine.run.admissibility_checks) +
                  " sampled checks, max violation " + fmt("%.1e", violation)};
}

Outcome riemann() {
  using euler::PrimitiveState;
  const auto sod = euler::exact_riemann_euler({1.0, Point::Zero(), 1.0}, {0.125, Point::Zero(), 0.1});
  const double dp = std::abs(sod.p_star - 0.30313017805064679);
  const double du = std::abs(sod.u_star - 0.92745262004894991);
  const auto p123 = euler::exact_riemann_euler({1.0, Point(-2, 0, 0), 0.4}, {1.0, Point(2, 0, 0), 0.4});
  // Rankine-Hugoniot across the right shock
  const double g = sod.gamma, s = sod.right_head();
  const double r1 = sod.rho_star_right, u1 = sod.u_star, p1 = sod.p_star, r2 = 0.125, p2 = 0.1;
  const double e1 = p1 / (g - 1) + 0.5 * r1 * u1 * u1, e2 = p2 / (g - 1);
  const double rh = std::max({std::abs(r1 * u1 - s * (r1 - r2)), std::abs(r1 * u1 * u1 + p1 - p2 - s * r1 * u1),
                              std::abs((e1 + p1) * u1 - s * (e1 - e2))});
  const bool ok = dp <= 1e-10 && du <= 1e-10 && std::abs(p123.u_star) <= 1e-12 && p123.p_star > 0.0 && rh <= 1e-10;
  return {ok, "Sod |dp*| " + fmt("%.1e", dp) + ", |du*| " + fmt("%.1e", du) + ", p123 u* " +
                  fmt("%.1e", p123.u_star) + ", p* " + fmt("%.5f", p123.p_star) + ", RH residual " + fmt("%.1e", rh)};
}

Outcome shock_tubes() {
  const BenchReport sod = run_convergence_study(config("sod_1d"));
  const auto& a = sod.rows.front();
  const auto& b = sod.rows.back();
  const double overall = eoc(a.l1_error, b.l1_error, a.h, b.h);
  bool ok = overall >= 0.6 && overall <= 1.0;

  std::string tube_detail;
  try {
    const LevelResult tube = run_level(config("sod_tube_3d"), 0);
    ok = ok && tube.run.min_density > 0.0 && tube.run.min_pressure > 0.0;
    tube_detail = std::to_string(tube.row.elements) + " tets to t = 0.5 in " + std::to_string(tube.run.steps) +
                  " steps, min rho " + fmt("%.3f", tube.run.min_density);
  } catch (const std::exception& e) {
    ok = false;
    tube_detail = std::string("3D tube failed: ") + e.what();
  }

  std::string p123_detail;
  try {
    const BenchConfig c = config("p123_1d");
    double rho = INFINITY, p = INFINITY;
    for (int level = 0; level < num_levels(c); ++level) {
      const LevelResult r = run_level(c, level);
      rho = std::min(rho, r.run.min_density);
      p = std::min(p, r.run.min_pressure);
    }
    ok = ok && rho > 0.0 && p > 0.0;
    p123_detail = "p123 min rho " + fmt("%.2e", rho) + ", min p " + fmt("%.2e", p);
  } catch (const std::exception& e) {
    ok = false;
    p123_detail = std::string("p123 failed: ") + e.what();
  }
  return {ok, "1D Sod " + std::to_string(a.elements) + " to " + std::to_string(b.elements) + " cells: EOC " +
                  fmt("%.2f", overall) + " (pairwise " + eocs(sod) + "); " + tube_detail + "; " + p123_detail};
}

Outcome conservation() {
  const Mesh mesh = attach_ghosts_uniform(build_cartesian({0, 0}, {1, 1}, {32, 32}), BoundaryKind::periodic);
  Problem problem;
  problem.model = std::make_shared<ScalarQuadratic>(2);
  problem.flux = std::make_shared<LocalLaxFriedrichs>();
  problem.reconstruction.kind = ReconstructionKind::qp;
  SchemeState state{0.0, project_initial(mesh, [](const Point& x) {
                      return State::Constant(1, 0.5 + manufactured_solution(x, 0.0));
                    }, 1)};
  const double m0 = total_mass(mesh, state.field);
  const double dt = cfl_dt(mesh, state.field, problem, 0.4);
  const Operator op = [&](const CellField& u, double t) {
    return spatial_residual(mesh, u, t, problem, default_workers());
  };
  for (int step = 0; step < 500; ++step) state = rk2_step(state, dt, op);
  const double drift = std::abs(total_mass(mesh, state.field) - m0) / std::abs(m0);
  return {drift <= 1e-11, "500 steps on a periodic 32x32 grid: relative mass drift " + fmt("%.2e", drift)};
}

Outcome determinism() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"manufactured_checkerboard_qp", "manufactured_triangles_lp", "sod_1d"}) {
    BenchConfig c = config(name);
    std::string reference;
    for (int workers : {1, 2, 8}) {
      c.workers = workers;
      std::ostringstream os;
      os.precision(17);
      for (int level = 0; level < std::min(2, num_levels(c)); ++level) os << run_level(c, level).row.l1_error << ' ';
      if (workers == 1) reference = os.str();
      else ok = ok && os.str() == reference;
    }
    detail += (detail.empty() ? "" : ", ") + std::string(name);
  }
  return {ok, "identical errors for workers 1, 2, 8 on " + detail};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"QP equals minmod on Cartesian grids", theorem1},
      {"QP solver vs enumeration oracle", qp_oracle},
      {"manufactured problem on triangles", manufactured_triangles},
      {"manufactured problem on checkerboard meshes", manufactured_checkerboard},
      {"solid-body rotation", rotation},
      {"exact Riemann solver", riemann},
      {"shock tubes", shock_tubes},
      {"conservation", conservation},
      {"determinism", determinism},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %d. %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
