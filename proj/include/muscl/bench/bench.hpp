#pragma once

#include "muscl/mesh/mesh.hpp"
#include "muscl/solver/solver.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace muscl::bench {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ProblemKind { manufactured_nonlinear, solid_rotation, euler_sod, euler_p123 };

ProblemKind problem_kind_from_string(const std::string& name);
std::string to_string(ProblemKind kind);
/// 3/10, 2 pi, 0.5 and 0.15.
double default_t_end(ProblemKind kind);

enum class MeshGenerator { cartesian, refine, checkerboard, file };

struct MeshSpec {
  MeshGenerator generator = MeshGenerator::cartesian;
  /// cartesian: cells per axis; checkerboard: cells per axis of the base grid;
  /// refine: number of uniform refinements of `base`.
  std::vector<int> levels;
  std::filesystem::path base;
  std::vector<std::filesystem::path> files;
  int dim = 2;
  std::vector<double> lower;
  std::vector<double> upper;
  GhostPlacement ghosts = GhostPlacement::reflect;
};

/// cell_average: sum_E |int_E (u_E - exact) dx|, the distance to the exact
/// cell averages. pointwise: sum_E int_E |u_E - exact| dx, which is O(h) for
/// any smooth solution.
enum class ErrorNorm { cell_average, pointwise };

struct BenchConfig {
  ProblemKind problem = ProblemKind::manufactured_nonlinear;
  MeshSpec mesh;
  ReconstructionConfig reconstruction;
  std::string flux = "llf";
  double cfl = 0.4;
  double dt_max = std::numeric_limits<double>::infinity();
  double t_end = 0.0;
  euler::LimitingVariables limiting = euler::LimitingVariables::rho_velocity_energy;
  std::filesystem::path output_dir;
  /// Write a VTK snapshot every n steps (0: final state only, when an output
  /// directory is set).
  long snapshot_every = 0;
  int workers = 1;
  double admissibility_sample_rate = 0.01;
  ErrorNorm error_norm = ErrorNorm::cell_average;
};

/// INI-style text: [problem], [mesh], [scheme], [output] sections with
/// key = value lines. Relative paths are resolved against `base_dir`.
BenchConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
BenchConfig load_config(const std::filesystem::path& path);

/// Problem bound to a concrete dimension, with its reference solution.
struct BenchProblem {
  ProblemKind kind = ProblemKind::manufactured_nonlinear;
  Problem problem;
  PointFunction initial;
  ProjectionRule projection = ProjectionRule::quadrature;
  /// Reference solution at (x, t): conserved for scalar problems, primitive
  /// (rho, v, p) for Euler.
  SpaceTimeFunction exact;
  std::map<int, BoundaryKind> boundary_kinds(const Mesh& mesh) const;
};

BenchProblem make_problem(ProblemKind kind, int dim, const ReconstructionConfig& reconstruction,
                          const std::string& flux, euler::LimitingVariables limiting = {});

/// Slotted cylinder, cone and hump on the unit square.
double solid_rotation_initial(const Point& x);

/// L1 error with degree-2 simplex quadrature, summed over components. With
/// `euler` set, both sides are compared in primitive variables (rho, v, p).
double l1_error(const Mesh& mesh, const CellField& field, const SpaceTimeFunction& exact, double t,
                const EulerModel* euler = nullptr, ErrorNorm norm = ErrorNorm::cell_average);

struct ReportRow {
  int elements = 0;
  double h = 0.0;
  double l1_error = 0.0;
  std::optional<double> eoc;
  double wall_seconds = 0.0;
};

struct BenchReport {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<ReportRow> rows;
};

/// eoc_k = log(e_{k-1}/e_k) / log(h_{k-1}/h_k); the first row has none.
void annotate_eoc(std::vector<ReportRow>& rows);
double eoc(double e_coarse, double e_fine, double h_coarse, double h_fine);

/// Metadata as '# key: value' lines, then elements,h,l1_error,eoc,wall_seconds.
void write_csv(std::ostream& out, const BenchReport& report);
BenchReport read_csv(std::istream& in);

/// Mesh of study level `level`, without ghosts.
Mesh build_level_mesh(const BenchConfig& config, int level);
/// Attaches ghosts with the problem's boundary kinds.
Mesh with_problem_ghosts(const Mesh& mesh, const BenchProblem& problem, GhostPlacement placement);
int num_levels(const BenchConfig& config);

struct LevelResult {
  ReportRow row;
  RunResult run;
};

/// One level: projection, time integration (timed) and the error at t_end.
LevelResult run_level(const BenchConfig& config, int level);

/// All levels in sequence; writes convergence.csv when an output directory is
/// configured.
BenchReport run_convergence_study(const BenchConfig& config);

struct Theorem1Result {
  int dim = 0;
  int cells = 0;
  int trials = 0;
  double max_deviation = 0.0;
  long cell_problems = 0;
  long solver_fallbacks = 0;
  double seconds = 0.0;
};

/// Compares QP gradients with componentwise minmod on an anisotropic
/// Cartesian grid (cells^dim) for random fields and random per-face weights
/// in (0.1, 10].
Theorem1Result check_theorem1(int dim, int cells, int trials, std::uint64_t seed = 1, int workers = 1);

}  // namespace muscl::bench
