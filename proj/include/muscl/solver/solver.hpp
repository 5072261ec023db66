#pragma once

#include "muscl/field.hpp"
#include "muscl/mesh/mesh.hpp"
#include "muscl/physics/models.hpp"
#include "muscl/reconstruction/reconstruction.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>

namespace muscl {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using PointFunction = std::function<State(const Point&)>;
using SpaceTimeFunction = std::function<State(const Point&, double)>;

/// Everything the semi-discrete operator needs besides the mesh. Boundary
/// kinds live on the mesh ghosts; `boundary_values` feeds Dirichlet ghosts.
struct Problem {
  std::shared_ptr<const Model> model;
  std::shared_ptr<const NumericalFlux> flux;
  SpaceTimeFunction boundary_values;
  /// Optional cell source, sampled at the centroid.
  SpaceTimeFunction source;
  ReconstructionConfig reconstruction;
  /// Euler only: variables the reconstruction acts on.
  euler::LimitingVariables limiting = euler::LimitingVariables::rho_velocity_energy;

  int num_components() const { return model->num_components(); }
  /// Non-null when the model is the Euler system.
  const EulerModel* euler() const { return dynamic_cast<const EulerModel*>(model.get()); }
};

struct SchemeState {
  double t = 0.0;
  CellField field;
};

enum class ProjectionRule { quadrature, subsample };

/// Cell averages of u0. `quadrature` uses a degree-2 simplex rule, `subsample`
/// averages 4^d sub-simplex centroids per simplex (for discontinuous data).
CellField project_initial(const Mesh& mesh, const PointFunction& u0, int components,
                          ProjectionRule rule = ProjectionRule::quadrature);

/// Extended field (elements, then ghosts) at time t.
CellField fill_ghosts(const Mesh& mesh, const CellField& field, double t, const Problem& problem);

struct ResidualDiagnostics {
  bool check_admissibility = false;
  double max_admissibility_violation = 0.0;
};

/// -(1/|E|) sum_faces G(trace_E, trace_E') + source, with single-point face
/// quadrature at the face centroid. `field` holds element values only.
CellField spatial_residual(const Mesh& mesh, const CellField& field, double t, const Problem& problem,
                           int workers = 1, ReconstructionStats* stats = nullptr,
                           ResidualDiagnostics* diagnostics = nullptr);

/// cfl * min_E |E| / sum_faces |e| lambda_max, with cell averages as face
/// traces; dt_max when every speed vanishes.
double cfl_dt(const Mesh& mesh, const CellField& field, const Problem& problem, double cfl,
              double dt_max = std::numeric_limits<double>::infinity(), double t = 0.0);

/// u -> L(u, t).
using Operator = std::function<CellField(const CellField&, double)>;

/// One Heun (SSP-RK2) step.
SchemeState rk2_step(const SchemeState& state, double dt, const Operator& op);

/// Solution of the nonlinear benchmark, 0.2 sin(2 pi (x1 - t)) sin(2 pi (x2 - t)).
double manufactured_solution(const Point& x, double t);
/// Source d_t u + d_1 u^2 + d_2 u^2 of the nonlinear benchmark.
double manufactured_source(const Point& x, double t);

struct RunOptions {
  double t_end = 0.0;
  double cfl = 0.4;
  double dt_max = std::numeric_limits<double>::infinity();
  int workers = 1;
  /// Fraction of steps on which reconstruction admissibility is re-checked.
  double admissibility_sample_rate = 0.01;
  std::uint64_t seed = 12345;
  long max_steps = 100'000'000;
  /// Called after every accepted step (step 0 is the initial state).
  std::function<void(long step, const SchemeState&)> observer;
};

struct RunResult {
  SchemeState state;
  long steps = 0;
  int admissibility_checks = 0;
  double max_admissibility_violation = 0.0;
  long solver_fallbacks = 0;
  /// Euler only: smallest cell density and pressure seen over the run.
  double min_density = std::numeric_limits<double>::quiet_NaN();
  double min_pressure = std::numeric_limits<double>::quiet_NaN();
};

/// Integrates from `initial` at t = 0 to options.t_end, clipping the last
/// step. Throws SolverError on non-finite values.
RunResult run(const Mesh& mesh, const Problem& problem, const CellField& initial, const RunOptions& options);

/// Sum of |E| u_E[k].
double total_mass(const Mesh& mesh, const CellField& field, int k = 0);

}  // namespace muscl
