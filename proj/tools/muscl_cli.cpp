#include "muscl/bench/bench.hpp"
#include "muscl/parallel.hpp"
#include "muscl/physics/riemann.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <cmath>
#include <limits>
#include <sstream>

namespace {

using namespace muscl;

int load(const std::string& path, bench::BenchConfig& config) {
  if (!std::filesystem::exists(path)) {
    std::cerr << "error: config file not found: " << path << '\n';
    return 2;
  }
  try {
    config = bench::load_config(path);
  } catch (const bench::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int cmd_run(const std::string& path) {
  bench::BenchConfig config;
  if (const int rc = load(path, config)) return rc;
  const auto level = bench::run_level(config, 0);
  bench::BenchReport report;
  report.metadata = {{"problem", bench::to_string(config.problem)},
                     {"reconstruction", to_string(config.reconstruction.kind)},
                     {"steps", std::to_string(level.run.steps)},
                     {"solver_fallbacks", std::to_string(level.run.solver_fallbacks)}};
  if (level.run.admissibility_checks > 0) {
    std::ostringstream os;
    os << level.run.max_admissibility_violation;
    report.metadata.emplace_back("max_admissibility_violation", os.str());
  }
  if (!std::isnan(level.run.min_density)) {
    std::ostringstream os;
    os << level.run.min_density << ' ' << level.run.min_pressure;
    report.metadata.emplace_back("min_density_pressure", os.str());
  }
  report.rows.push_back(level.row);
  bench::write_csv(std::cout, report);
  return 0;
}

int cmd_convergence(const std::string& path) {
  bench::BenchConfig config;
  if (const int rc = load(path, config)) return rc;
  bench::write_csv(std::cout, bench::run_convergence_study(config));
  return 0;
}

struct RiemannArgs {
  double rho_l = 1.0, u_l = 0.0, p_l = 1.0;
  double rho_r = 0.125, u_r = 0.0, p_r = 0.1;
  double time = 0.2;
  int samples = 101;
  double x_min = -1.0, x_max = 1.0;
};

int cmd_riemann(const RiemannArgs& a) {
  const euler::PrimitiveState left{a.rho_l, Point(a.u_l, 0.0, 0.0), a.p_l};
  const euler::PrimitiveState right{a.rho_r, Point(a.u_r, 0.0, 0.0), a.p_r};
  const auto sol = euler::exact_riemann_euler(left, right);
  std::cout << std::setprecision(std::numeric_limits<double>::max_digits10);
  std::cout << "x,rho,u,p,p_star,u_star\n";
  for (int i = 0; i < a.samples; ++i) {
    const double x = a.samples == 1 ? 0.5 * (a.x_min + a.x_max)
                                    : a.x_min + (a.x_max - a.x_min) * i / (a.samples - 1);
    const auto w = a.time > 0.0 ? euler::sample_riemann(sol, x / a.time) : (x < 0.0 ? left : right);
    std::cout << x << ',' << w.rho << ',' << w.v[0] << ',' << w.p << ',' << sol.p_star << ',' << sol.u_star << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MUSCL finite-volume benchmarks with LP/QP-limited reconstruction"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the first level of a config and print its report row");
  run->add_option("config", config_path, "Config file")->required();
  auto* conv = app.add_subcommand("convergence", "Run every level and print the convergence CSV");
  conv->add_option("config", config_path, "Config file")->required();

  RiemannArgs ra;
  auto* riemann = app.add_subcommand("riemann", "Sample the exact Euler Riemann solution as CSV");
  riemann->add_option("--rho-l", ra.rho_l)->required();
  riemann->add_option("--u-l", ra.u_l)->required();
  riemann->add_option("--p-l", ra.p_l)->required();
  riemann->add_option("--rho-r", ra.rho_r)->required();
  riemann->add_option("--u-r", ra.u_r)->required();
  riemann->add_option("--p-r", ra.p_r)->required();
  riemann->add_option("--time", ra.time)->required();
  riemann->add_option("--samples", ra.samples)->required()->check(CLI::PositiveNumber);
  riemann->add_option("--x-min", ra.x_min);
  riemann->add_option("--x-max", ra.x_max);

  int dim = 2, cells = 16, trials = 100;
  std::uint64_t seed = 1;
  auto* th = app.add_subcommand("check-theorem1", "Compare QP gradients with minmod on Cartesian grids");
  th->add_option("--dim", dim)->required()->check(CLI::Range(1, 3));
  th->add_option("--cells", cells)->required()->check(CLI::Range(2, 1 << 12));
  th->add_option("--trials", trials)->required()->check(CLI::PositiveNumber);
  th->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path);
    if (*conv) return cmd_convergence(config_path);
    if (*riemann) return cmd_riemann(ra);
    if (*th) {
      const auto r = bench::check_theorem1(dim, cells, trials, seed, default_workers());
      std::cout << "dim " << r.dim << ", cells " << r.cells << "^" << r.dim << ", trials " << r.trials
                << ", cell problems " << r.cell_problems << ", fallbacks " << r.solver_fallbacks << '\n';
      std::cout << "max deviation " << std::setprecision(3) << std::scientific << r.max_deviation << '\n';
      return r.max_deviation <= 1e-10 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
