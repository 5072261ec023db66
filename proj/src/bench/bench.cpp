#include "muscl/bench/bench.hpp"

#include "muscl/mesh/mesh_io.hpp"
#include "muscl/mesh/quadrature.hpp"
#include "muscl/parallel.hpp"
#include "muscl/physics/riemann.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace muscl::bench {

ProblemKind problem_kind_from_string(const std::string& name) {
  if (name == "manufactured_nonlinear") return ProblemKind::manufactured_nonlinear;
  if (name == "solid_rotation") return ProblemKind::solid_rotation;
  if (name == "euler_sod") return ProblemKind::euler_sod;
  if (name == "euler_p123") return ProblemKind::euler_p123;
  throw ConfigError("unknown problem '" + name + "'");
}

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::manufactured_nonlinear: return "manufactured_nonlinear";
    case ProblemKind::solid_rotation: return "solid_rotation";
    case ProblemKind::euler_sod: return "euler_sod";
    case ProblemKind::euler_p123: return "euler_p123";
  }
  return "unknown";
}

double default_t_end(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::manufactured_nonlinear: return 0.3;
    case ProblemKind::solid_rotation: return 2.0 * std::numbers::pi;
    case ProblemKind::euler_sod: return 0.5;
    case ProblemKind::euler_p123: return 0.15;
  }
  return 0.0;
}

namespace {

bool is_euler(ProblemKind kind) { return kind == ProblemKind::euler_sod || kind == ProblemKind::euler_p123; }

template <typename T>
std::vector<T> parse_list(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::vector<T> out;
  T v;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw ConfigError("malformed list for '" + key + "': " + text);
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

MeshGenerator generator_from_string(const std::string& name) {
  if (name == "cartesian") return MeshGenerator::cartesian;
  if (name == "refine") return MeshGenerator::refine;
  if (name == "checkerboard") return MeshGenerator::checkerboard;
  if (name == "file") return MeshGenerator::file;
  throw ConfigError("unknown mesh generator '" + name + "'");
}

euler::LimitingVariables limiting_from_string(const std::string& name) {
  if (name == "rho_velocity_energy") return euler::LimitingVariables::rho_velocity_energy;
  if (name == "rho_velocity_pressure") return euler::LimitingVariables::rho_velocity_pressure;
  throw ConfigError("unknown limiting variables '" + name + "'");
}

}  // namespace

BenchConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  BenchConfig c;
  try {
    c.problem = problem_kind_from_string(tree.get<std::string>("problem.name"));
    c.t_end = tree.get<double>("problem.t_end", default_t_end(c.problem));

    c.mesh.generator = generator_from_string(tree.get<std::string>("mesh.kind", "cartesian"));
    c.mesh.dim = tree.get<int>("mesh.dim", is_euler(c.problem) ? 1 : 2);
    if (auto v = tree.get_optional<std::string>("mesh.levels")) c.mesh.levels = parse_list<int>(*v, "mesh.levels");
    if (auto v = tree.get_optional<std::string>("mesh.base")) c.mesh.base = resolve(base_dir, *v);
    if (auto v = tree.get_optional<std::string>("mesh.files"))
      for (const auto& f : parse_list<std::string>(*v, "mesh.files")) c.mesh.files.push_back(resolve(base_dir, f));
    if (auto v = tree.get_optional<std::string>("mesh.lower")) c.mesh.lower = parse_list<double>(*v, "mesh.lower");
    if (auto v = tree.get_optional<std::string>("mesh.upper")) c.mesh.upper = parse_list<double>(*v, "mesh.upper");
    // Dirichlet data is exact on the face for scalar problems; reflected ghosts
    // mirror the wall state for the tubes
    const std::string ghosts = tree.get<std::string>("mesh.ghosts", is_euler(c.problem) ? "reflect" : "face_centroid");
    if (ghosts == "reflect") {
      c.mesh.ghosts = GhostPlacement::reflect;
    } else if (ghosts == "face_centroid") {
      c.mesh.ghosts = GhostPlacement::face_centroid;
    } else {
      throw ConfigError("unknown ghost placement '" + ghosts + "'");
    }

    c.reconstruction.kind = reconstruction_kind_from_string(tree.get<std::string>("scheme.reconstruction", "qp"));
    const std::string weights = tree.get<std::string>("scheme.weights", "uniform");
    if (weights == "uniform") {
      c.reconstruction.weights = WeightRule::uniform;
    } else if (weights == "inverse_distance_squared") {
      c.reconstruction.weights = WeightRule::inverse_distance_squared;
    } else {
      throw ConfigError("unknown weight rule '" + weights + "'");
    }
    c.reconstruction.qp_tolerance = tree.get<double>("scheme.qp_tolerance", optim::kDefaultQpTolerance);
    const std::string point = tree.get<std::string>("scheme.positive_point", "face_centroid");
    if (point == "face_centroid") {
      c.reconstruction.positive_point = PositiveConstraintPoint::face_centroid;
    } else if (point == "neighbor_centroid") {
      c.reconstruction.positive_point = PositiveConstraintPoint::neighbor_centroid;
    } else {
      throw ConfigError("unknown positive_point '" + point + "'");
    }
    c.flux = tree.get<std::string>("scheme.flux", is_euler(c.problem) ? "hll" : "llf");
    c.cfl = tree.get<double>("scheme.cfl", 0.4);
    c.dt_max = tree.get<double>("scheme.dt_max", std::numeric_limits<double>::infinity());
    c.limiting = limiting_from_string(tree.get<std::string>("scheme.limiting", "rho_velocity_energy"));
    c.workers = tree.get<int>("scheme.workers", default_workers());
    c.admissibility_sample_rate = tree.get<double>("scheme.admissibility_sample_rate", 0.01);
    const std::string norm = tree.get<std::string>("output.error_norm", "cell_average");
    if (norm == "cell_average") {
      c.error_norm = ErrorNorm::cell_average;
    } else if (norm == "pointwise") {
      c.error_norm = ErrorNorm::pointwise;
    } else {
      throw ConfigError("unknown error_norm '" + norm + "'");
    }

    if (auto v = tree.get_optional<std::string>("output.directory")) c.output_dir = resolve(base_dir, *v);
    c.snapshot_every = tree.get<long>("output.snapshot_every", 0);
  } catch (const pt::ptree_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  if (c.mesh.generator == MeshGenerator::file) {
    if (c.mesh.files.empty()) throw ConfigError("config: mesh.kind = file needs mesh.files");
  } else if (c.mesh.levels.empty()) {
    throw ConfigError("config: mesh.levels is empty");
  }
  if (c.mesh.generator == MeshGenerator::refine && c.mesh.base.empty())
    throw ConfigError("config: mesh.kind = refine needs mesh.base");
  if (c.cfl <= 0.0) throw ConfigError("config: cfl must be positive");
  if (c.t_end < 0.0) throw ConfigError("config: t_end must be non-negative");
  return c;
}

BenchConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse_config(in, path.parent_path());
}

double solid_rotation_initial(const Point& x) {
  const double r = 0.15;
  const Point xs(0.5, 0.75, 0.0), xc(0.5, 0.25, 0.0), xh(0.25, 0.5, 0.0);
  const Point p(x[0], x[1], 0.0);
  if ((p - xs).norm() <= r) {
    const bool slot = x[0] >= 0.475 && x[0] <= 0.525 && x[1] >= 0.0 && x[1] <= 0.85;
    return slot ? 0.0 : 1.0;
  }
  if ((p - xc).norm() <= r) return 1.0 - (p - xc).norm() / r;
  if ((p - xh).norm() <= r) return 0.25 + 0.25 * std::cos(std::numbers::pi * (p - xh).norm() / r);
  return 0.0;
}

std::map<int, BoundaryKind> BenchProblem::boundary_kinds(const Mesh& mesh) const {
  std::map<int, BoundaryKind> kinds;
  for (int tag : mesh.boundary_tags()) {
    // x1 = -1 and x1 = 1 are tagged 1 and 2; the tube wall is everything else
    const bool wall = (kind == ProblemKind::euler_sod || kind == ProblemKind::euler_p123) && tag != 1 && tag != 2;
    kinds[tag] = wall ? BoundaryKind::slip_wall : BoundaryKind::dirichlet;
  }
  return kinds;
}

namespace {

State scalar(double v) {
  State s(1);
  s[0] = v;
  return s;
}

State primitive_vector(const euler::PrimitiveState& w, int dim) {
  State s(dim + 2);
  s[0] = w.rho;
  for (int a = 0; a < dim; ++a) s[1 + a] = w.v[a];
  s[dim + 1] = w.p;
  return s;
}

}  // namespace

BenchProblem make_problem(ProblemKind kind, int dim, const ReconstructionConfig& reconstruction,
                          const std::string& flux, euler::LimitingVariables limiting) {
  BenchProblem b;
  b.kind = kind;
  b.problem.reconstruction = reconstruction;
  b.problem.flux = make_numerical_flux(flux);
  b.problem.limiting = limiting;
  switch (kind) {
    case ProblemKind::manufactured_nonlinear: {
      if (dim != 2) throw ConfigError("manufactured_nonlinear is two-dimensional");
      b.problem.model = std::make_shared<ScalarQuadratic>(2);
      b.exact = [](const Point& x, double t) { return scalar(manufactured_solution(x, t)); };
      b.initial = [](const Point& x) { return scalar(manufactured_solution(x, 0.0)); };
      b.problem.boundary_values = b.exact;
      b.problem.source = [](const Point& x, double t) { return scalar(manufactured_source(x, t)); };
      break;
    }
    case ProblemKind::solid_rotation: {
      if (dim != 2) throw ConfigError("solid_rotation is two-dimensional");
      b.problem.model = std::make_shared<LinearAdvection>(LinearAdvection::solid_rotation());
      b.initial = [](const Point& x) { return scalar(solid_rotation_initial(x)); };
      // rotate back by angle t about the center
      b.exact = [](const Point& x, double t) {
        const double c = std::cos(t), s = std::sin(t);
        const double dx = x[0] - 0.5, dy = x[1] - 0.5;
        return scalar(solid_rotation_initial(Point(0.5 + c * dx + s * dy, 0.5 - s * dx + c * dy, 0.0)));
      };
      b.problem.boundary_values = b.exact;
      b.projection = ProjectionRule::subsample;
      break;
    }
    case ProblemKind::euler_sod:
    case ProblemKind::euler_p123: {
      euler::PrimitiveState left, right;
      if (kind == ProblemKind::euler_sod) {
        left = {1.0, Point::Zero(), 1.0};
        right = {0.125, Point::Zero(), 0.1};
      } else {
        left = {1.0, Point(-2.0, 0.0, 0.0), 0.4};
        right = {1.0, Point(2.0, 0.0, 0.0), 0.4};
      }
      auto model = std::make_shared<EulerModel>(dim);
      b.problem.model = model;
      const State ul = euler::to_conserved(left, dim);
      const State ur = euler::to_conserved(right, dim);
      b.initial = [ul, ur](const Point& x) { return x[0] < 0.0 ? ul : ur; };
      b.problem.boundary_values = [ul, ur](const Point& x, double) { return x[0] < 0.0 ? ul : ur; };
      const euler::RiemannSolution sol = euler::exact_riemann_euler(left, right);
      b.exact = [sol, left, right, dim](const Point& x, double t) {
        if (t <= 0.0) return primitive_vector(x[0] < 0.0 ? left : right, dim);
        return primitive_vector(euler::sample_riemann(sol, x[0] / t), dim);
      };
      b.projection = ProjectionRule::subsample;
      break;
    }
  }
  return b;
}

double l1_error(const Mesh& mesh, const CellField& field, const SpaceTimeFunction& exact, double t,
                const EulerModel* euler, ErrorNorm norm) {
  double total = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    State ue = field.state(e);
    if (euler) ue = primitive_vector(euler::to_primitive(ue, euler->dim(), euler->gamma()), euler->dim());
    State diff = State::Zero(ue.size());
    for (const auto& q : element_quadrature(mesh, e)) {
      const State d = q.weight * (ue - exact(q.x, t));
      if (norm == ErrorNorm::pointwise) {
        total += d.cwiseAbs().sum();
      } else {
        diff += d;
      }
    }
    total += diff.cwiseAbs().sum();
  }
  return total;
}

double eoc(double e_coarse, double e_fine, double h_coarse, double h_fine) {
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

void annotate_eoc(std::vector<ReportRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    rows[i].eoc = i == 0 ? std::nullopt
                         : std::optional<double>(eoc(rows[i - 1].l1_error, rows[i].l1_error, rows[i - 1].h, rows[i].h));
}

void write_csv(std::ostream& out, const BenchReport& report) {
  for (const auto& [key, value] : report.metadata) out << "# " << key << ": " << value << '\n';
  out << "elements,h,l1_error,eoc,wall_seconds\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& r : report.rows) {
    out << r.elements << ',' << r.h << ',' << r.l1_error << ',';
    if (r.eoc) out << *r.eoc;
    out << ',' << r.wall_seconds << '\n';
  }
}

BenchReport read_csv(std::istream& in) {
  BenchReport report;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.starts_with("# ")) {
      const auto colon = line.find(": ");
      if (colon == std::string::npos) throw ConfigError("malformed metadata line: " + line);
      report.metadata.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
      continue;
    }
    if (!header) {
      if (line != "elements,h,l1_error,eoc,wall_seconds") throw ConfigError("unexpected CSV header: " + line);
      header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() == 4) cells.emplace_back();
    if (cells.size() != 5) throw ConfigError("malformed CSV row: " + line);
    ReportRow r;
    r.elements = std::stoi(cells[0]);
    r.h = std::stod(cells[1]);
    r.l1_error = std::stod(cells[2]);
    if (!cells[3].empty()) r.eoc = std::stod(cells[3]);
    r.wall_seconds = std::stod(cells[4]);
    report.rows.push_back(r);
  }
  return report;
}

int num_levels(const BenchConfig& config) {
  return static_cast<int>(config.mesh.generator == MeshGenerator::file ? config.mesh.files.size()
                                                                        : config.mesh.levels.size());
}

namespace {

Mesh read_mesh(const std::filesystem::path& path) {
  return path.extension() == ".msh" ? read_gmsh_msh_file(path) : read_native_mesh_file(path);
}

}  // namespace

Mesh build_level_mesh(const BenchConfig& config, int level) {
  if (level < 0 || level >= num_levels(config)) throw ConfigError("level out of range");
  const MeshSpec& spec = config.mesh;
  switch (spec.generator) {
    case MeshGenerator::cartesian:
    case MeshGenerator::checkerboard: {
      const int dim = spec.generator == MeshGenerator::checkerboard ? 2 : spec.dim;
      std::vector<double> lower = spec.lower, upper = spec.upper;
      if (lower.empty()) {
        for (int a = 0; a < dim; ++a) {
          lower.push_back(is_euler(config.problem) ? (a == 0 ? -1.0 : -0.2) : 0.0);
          upper.push_back(is_euler(config.problem) ? (a == 0 ? 1.0 : 0.2) : 1.0);
        }
      }
      if (static_cast<int>(lower.size()) != dim || static_cast<int>(upper.size()) != dim)
        throw ConfigError("mesh.lower/mesh.upper must have mesh.dim entries");
      const Mesh grid = build_cartesian(lower, upper, std::vector<int>(dim, spec.levels[level]));
      return spec.generator == MeshGenerator::checkerboard ? checkerboard_refine(grid) : grid;
    }
    case MeshGenerator::refine: {
      Mesh m = read_mesh(spec.base);
      for (int i = 0; i < spec.levels[level]; ++i) m = uniform_refine(m);
      return m;
    }
    case MeshGenerator::file: return read_mesh(spec.files[level]);
  }
  throw ConfigError("unknown mesh generator");
}

Mesh with_problem_ghosts(const Mesh& mesh, const BenchProblem& problem, GhostPlacement placement) {
  return attach_ghosts(mesh, problem.boundary_kinds(mesh), placement);
}

namespace {

void write_snapshot(const std::filesystem::path& path, const Mesh& mesh, const CellField& field,
                    const EulerModel* euler) {
  std::vector<std::string> names;
  std::vector<std::vector<double>> data;
  if (euler) {
    const int dim = euler->dim();
    names.push_back("rho");
    for (int a = 0; a < dim; ++a) names.push_back("v" + std::to_string(a + 1));
    names.push_back("p");
    data.assign(names.size(), std::vector<double>(mesh.num_elements()));
    for (int e = 0; e < mesh.num_elements(); ++e) {
      const State w = primitive_vector(euler::to_primitive(field.state(e), dim, euler->gamma()), dim);
      for (int k = 0; k < w.size(); ++k) data[k][e] = w[k];
    }
  } else {
    for (int k = 0; k < field.num_components(); ++k) {
      names.push_back(field.num_components() == 1 ? "u" : "u" + std::to_string(k));
      std::vector<double> column(mesh.num_elements());
      for (int e = 0; e < mesh.num_elements(); ++e) column[e] = field(e, k);
      data.push_back(std::move(column));
    }
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_vtk(out, mesh, names, data);
}

}  // namespace

LevelResult run_level(const BenchConfig& config, int level) {
  const Mesh raw = build_level_mesh(config, level);
  const BenchProblem problem =
      make_problem(config.problem, raw.dim(), config.reconstruction, config.flux, config.limiting);
  const Mesh mesh = with_problem_ghosts(raw, problem, config.mesh.ghosts);
  const CellField initial = project_initial(mesh, problem.initial, problem.problem.num_components(), problem.projection);

  RunOptions options;
  options.t_end = config.t_end;
  options.cfl = config.cfl;
  options.dt_max = config.dt_max;
  options.workers = config.workers;
  options.admissibility_sample_rate = config.admissibility_sample_rate;
  const EulerModel* euler = problem.problem.euler();
  if (!config.output_dir.empty() && config.snapshot_every > 0) {
    std::filesystem::create_directories(config.output_dir);
    options.observer = [&](long step, const SchemeState& s) {
      if (step % config.snapshot_every == 0) {
        const auto name = "level" + std::to_string(level) + "_step" + std::to_string(step) + ".vtk";
        write_snapshot(config.output_dir / name, mesh, s.field, euler);
      }
    };
  }

  const auto start = std::chrono::steady_clock::now();
  LevelResult out;
  out.run = run(mesh, problem.problem, initial, options);
  const auto stop = std::chrono::steady_clock::now();

  out.row.elements = mesh.num_elements();
  out.row.h = mesh.width();
  out.row.l1_error = l1_error(mesh, out.run.state.field, problem.exact, out.run.state.t, euler,
                              config.error_norm);
  out.row.wall_seconds = std::chrono::duration<double>(stop - start).count();

  if (!config.output_dir.empty()) {
    std::filesystem::create_directories(config.output_dir);
    write_snapshot(config.output_dir / ("level" + std::to_string(level) + "_final.vtk"), mesh, out.run.state.field,
                   euler);
  }
  return out;
}

BenchReport run_convergence_study(const BenchConfig& config) {
  BenchReport report;
  report.metadata = {
      {"problem", to_string(config.problem)},
      {"reconstruction", to_string(config.reconstruction.kind)},
      {"flux", config.flux},
      {"cfl", [&] {
         std::ostringstream os;
         os << config.cfl;
         return os.str();
       }()},
      {"t_end", [&] {
         std::ostringstream os;
         os << std::setprecision(17) << config.t_end;
         return os.str();
       }()},
      {"workers", std::to_string(config.workers)},
      {"h", "maximum element diameter"},
      {"error_norm", config.error_norm == ErrorNorm::cell_average ? "cell_average" : "pointwise"},
      {"wall_seconds", "time integration only; mesh construction, projection and I/O excluded"},
  };
  for (int level = 0; level < num_levels(config); ++level) report.rows.push_back(run_level(config, level).row);
  annotate_eoc(report.rows);
  if (!config.output_dir.empty()) {
    std::filesystem::create_directories(config.output_dir);
    std::ofstream out(config.output_dir / "convergence.csv");
    write_csv(out, report);
  }
  return report;
}

Theorem1Result check_theorem1(int dim, int cells, int trials, std::uint64_t seed, int workers) {
  if (dim < 1 || dim > 3) throw ConfigError("dimension must be 1, 2 or 3");
  if (cells < 2 || trials < 1) throw ConfigError("need at least 2 cells per axis and one trial");
  std::vector<double> lower(dim, 0.0), upper;
  // anisotropic spacing so that h differs per axis
  for (int a = 0; a < dim; ++a) upper.push_back(1.0 + 0.5 * a);
  const Mesh mesh = attach_ghosts_uniform(build_cartesian(lower, upper, std::vector<int>(dim, cells)),
                                          BoundaryKind::dirichlet);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::uniform_int_distribution<int> level(0, 3);
  std::uniform_real_distribution<double> weight(0.1, 10.0);

  Theorem1Result result{dim, cells, trials};
  const auto start = std::chrono::steady_clock::now();
  for (int trial = 0; trial < trials; ++trial) {
    CellField field(mesh.num_slots(), 1);
    // every other trial draws from a few levels so that ties and flat rows occur
    const bool discrete = trial % 2 == 1;
    for (int s = 0; s < field.num_cells(); ++s) field(s, 0) = discrete ? level(rng) : value(rng);
    std::vector<std::vector<double>> w(mesh.num_elements());
    for (int e = 0; e < mesh.num_elements(); ++e)
      for (std::size_t i = 0; i < mesh.neighbors(e).size(); ++i) w[e].push_back(10.1 - weight(rng));
    ReconstructionConfig config;
    config.kind = ReconstructionKind::qp;
    config.custom_weight = [&w](int e, int i) { return w[e][i]; };
    ReconstructionStats stats;
    const LinearField qp = reconstruct_qp(mesh, field, config, workers, &stats);
    const LinearField mm = reconstruct_minmod(mesh, field, workers);
    for (int e = 0; e < mesh.num_elements(); ++e)
      result.max_deviation = std::max(result.max_deviation, (qp.gradient(e, 0) - mm.gradient(e, 0)).cwiseAbs().maxCoeff());
    result.cell_problems += stats.cell_problems;
    result.solver_fallbacks += stats.solver_fallbacks;
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace muscl::bench
