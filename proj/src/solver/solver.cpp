#include "muscl/solver/solver.hpp"

#include "muscl/mesh/quadrature.hpp"
#include "muscl/parallel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace muscl {

CellField project_initial(const Mesh& mesh, const PointFunction& u0, int components, ProjectionRule rule) {
  CellField out(mesh.num_elements(), components);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto points = rule == ProjectionRule::quadrature ? element_quadrature(mesh, e) : element_subsamples(mesh, e, 2);
    State acc = State::Zero(components);
    double vol = 0.0;
    for (const auto& q : points) {
      acc += q.weight * u0(q.x);
      vol += q.weight;
    }
    out.set_state(e, acc / vol);
  }
  return out;
}

CellField fill_ghosts(const Mesh& mesh, const CellField& field, double t, const Problem& problem) {
  const int r = field.num_components();
  CellField ext(mesh.num_slots(), r);
  std::copy_n(field.data().begin(), static_cast<std::size_t>(mesh.num_elements()) * r, ext.data().begin());
  const EulerModel* euler = problem.euler();
  for (int g = 0; g < mesh.num_ghosts(); ++g) {
    const Ghost& ghost = mesh.ghost(g);
    const int slot = mesh.num_elements() + g;
    switch (ghost.kind) {
      case BoundaryKind::dirichlet:
        if (!problem.boundary_values) throw SolverError("Dirichlet boundary without boundary values");
        ext.set_state(slot, problem.boundary_values(ghost.centroid, t));
        break;
      case BoundaryKind::periodic:
        ext.set_state(slot, field.state(ghost.partner));
        break;
      case BoundaryKind::slip_wall: {
        State s = field.state(ghost.element);
        if (euler) {
          const Point& n = mesh.face(ghost.face).normal;
          double mn = 0.0;
          for (int a = 0; a < euler->dim(); ++a) mn += s[1 + a] * n[a];
          for (int a = 0; a < euler->dim(); ++a) s[1 + a] -= 2.0 * mn * n[a];
        }
        ext.set_state(slot, s);
        break;
      }
    }
  }
  return ext;
}

namespace {

bool limited_kind(ReconstructionKind kind) {
  return kind == ReconstructionKind::lsf_limited || kind == ReconstructionKind::lp ||
         kind == ReconstructionKind::qp || kind == ReconstructionKind::minmod;
}

std::string where(int e, int f) {
  std::ostringstream os;
  os << "cell " << e << ", face " << f;
  return os.str();
}

}  // namespace

CellField spatial_residual(const Mesh& mesh, const CellField& field, double t, const Problem& problem, int workers,
                           ReconstructionStats* stats, ResidualDiagnostics* diagnostics) {
  const int r = problem.num_components();
  const CellField ext = fill_ghosts(mesh, field, t, problem);
  const EulerModel* euler = problem.euler();
  const bool none = problem.reconstruction.kind == ReconstructionKind::none;
  const bool convert = euler && !none;
  const int dim = mesh.dim();

  CellField recon_input = ext;
  PositivityContext context;
  if (euler) {
    context = {dim, problem.limiting, euler->gamma()};
    for (int s = 0; s < ext.num_cells(); ++s) {
      const State u = ext.state(s);
      if (!euler::is_physical(u, dim, euler->gamma()))
        throw euler::NonPhysicalStateError("non-physical cell average in slot " + std::to_string(s));
      if (convert) recon_input.set_state(s, euler::to_limiting(u, dim, problem.limiting, euler->gamma()));
    }
  }

  const LinearField linear = reconstruct(mesh, recon_input, problem.reconstruction, workers, stats, &context);

  if (diagnostics && diagnostics->check_admissibility && limited_kind(problem.reconstruction.kind)) {
    double worst = 0.0;
    for (int e = 0; e < mesh.num_elements(); ++e)
      worst = std::max(worst, admissibility_violation(mesh, recon_input, linear, e));
    diagnostics->max_admissibility_violation = std::max(diagnostics->max_admissibility_violation, worst);
  }

  const auto trace = [&](const State& w, int e, int f) -> State {
    if (!convert) return w;
    State u = euler::from_limiting(w, dim, problem.limiting, euler->gamma());
    if (!euler::is_physical(u, dim, euler->gamma()))
      throw euler::NonPhysicalStateError("non-physical reconstructed trace at " + where(e, f));
    return u;
  };

  CellField residual(mesh.num_elements(), r);
  parallel_for(mesh.num_elements(), workers, [&](int e) {
    State acc = State::Zero(r);
    for (const auto& nb : mesh.neighbors(e)) {
      const Face& face = mesh.face(nb.face);
      const Point normal = nb.orientation * face.normal;
      const State inner = trace(linear.evaluate(e, face.centroid), e, nb.face);
      const State outer = nb.trace_face >= 0
                              ? trace(linear.evaluate(nb.slot, mesh.face(nb.trace_face).centroid), e, nb.face)
                              : ext.state(nb.slot);
      acc += (*problem.flux)(*problem.model, inner, outer, face.centroid, normal, face.measure);
    }
    State res = -acc / mesh.measure(e);
    if (problem.source) res += problem.source(mesh.centroid(e), t);
    residual.set_state(e, res);
  });
  return residual;
}

double cfl_dt(const Mesh& mesh, const CellField& field, const Problem& problem, double cfl, double dt_max,
              double t) {
  const CellField ext = fill_ghosts(mesh, field, t, problem);
  double rate = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const State ue = ext.state(e);
    double sum = 0.0;
    for (const auto& nb : mesh.neighbors(e)) {
      const Face& face = mesh.face(nb.face);
      const Point normal = nb.orientation * face.normal;
      const double lambda = std::max(problem.model->max_speed(ue, face.centroid, normal),
                                     problem.model->max_speed(ext.state(nb.slot), face.centroid, normal));
      sum += face.measure * lambda;
    }
    rate = std::max(rate, sum / mesh.measure(e));
  }
  if (rate == 0.0) return dt_max;
  return std::min(dt_max, cfl / rate);
}

SchemeState rk2_step(const SchemeState& state, double dt, const Operator& op) {
  const auto axpy = [](const CellField& u, double a, const CellField& l) {
    CellField out = u;
    auto o = out.data();
    const auto d = l.data();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] += a * d[i];
    return out;
  };
  const CellField u1 = axpy(state.field, dt, op(state.field, state.t));
  const CellField u2 = axpy(u1, dt, op(u1, state.t + dt));
  SchemeState next{state.t + dt, state.field};
  auto o = next.field.data();
  const auto b = u2.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = 0.5 * o[i] + 0.5 * b[i];
  return next;
}

double manufactured_solution(const Point& x, double t) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return 0.2 * std::sin(two_pi * (x[0] - t)) * std::sin(two_pi * (x[1] - t));
}

double manufactured_source(const Point& x, double t) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double a = two_pi * (x[0] - t);
  const double b = two_pi * (x[1] - t);
  const double u = 0.2 * std::sin(a) * std::sin(b);
  const double ux = 0.2 * two_pi * std::cos(a) * std::sin(b);
  const double uy = 0.2 * two_pi * std::sin(a) * std::cos(b);
  // u_t = -(u_x + u_y) for the travelling wave
  return (ux + uy) * (2.0 * u - 1.0);
}

double total_mass(const Mesh& mesh, const CellField& field, int k) {
  double m = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) m += mesh.measure(e) * field(e, k);
  return m;
}

namespace {

void check_finite(const CellField& field, long step) {
  for (int c = 0; c < field.num_cells(); ++c)
    for (int k = 0; k < field.num_components(); ++k)
      if (!std::isfinite(field(c, k))) {
        std::ostringstream os;
        os << "non-finite value at step " << step << ", cell " << c << ", component " << k;
        throw SolverError(os.str());
      }
}

void track_euler_minima(const Mesh& mesh, const CellField& field, const EulerModel& model, RunResult& result) {
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const State u = field.state(e);
    const double rho = u[0];
    const double p = euler::pressure(u, model.dim(), model.gamma());
    if (!(result.min_density <= rho)) result.min_density = rho;
    if (!(result.min_pressure <= p)) result.min_pressure = p;
  }
}

}  // namespace

RunResult run(const Mesh& mesh, const Problem& problem, const CellField& initial, const RunOptions& options) {
  RunResult result;
  result.state = {0.0, initial};
  ReconstructionStats stats;
  const EulerModel* euler = problem.euler();
  if (euler) track_euler_minima(mesh, initial, *euler, result);
  check_finite(initial, 0);
  if (options.observer) options.observer(0, result.state);

  std::mt19937_64 rng(options.seed);
  std::bernoulli_distribution sample(std::clamp(options.admissibility_sample_rate, 0.0, 1.0));

  while (result.state.t < options.t_end) {
    if (result.steps >= options.max_steps) throw SolverError("step limit reached");
    const double remaining = options.t_end - result.state.t;
    double dt = cfl_dt(mesh, result.state.field, problem, options.cfl, options.dt_max, result.state.t);
    if (!(dt > 0.0) || !std::isfinite(dt)) throw SolverError("invalid time step at step " + std::to_string(result.steps));
    const bool last = dt >= remaining;
    if (last) dt = remaining;

    ResidualDiagnostics diag;
    diag.check_admissibility = result.steps == 0 || sample(rng);
    bool first_stage = true;
    const Operator op = [&](const CellField& u, double t) {
      ResidualDiagnostics* d = first_stage && diag.check_admissibility ? &diag : nullptr;
      first_stage = false;
      return spatial_residual(mesh, u, t, problem, options.workers, &stats, d);
    };
    SchemeState next = rk2_step(result.state, dt, op);
    if (last) next.t = options.t_end;
    ++result.steps;
    check_finite(next.field, result.steps);
    if (diag.check_admissibility) {
      ++result.admissibility_checks;
      result.max_admissibility_violation = std::max(result.max_admissibility_violation, diag.max_admissibility_violation);
    }
    if (euler) track_euler_minima(mesh, next.field, *euler, result);
    result.state = std::move(next);
    if (options.observer) options.observer(result.steps, result.state);
  }
  result.solver_fallbacks = stats.solver_fallbacks.load();
  return result;
}

}  // namespace muscl
