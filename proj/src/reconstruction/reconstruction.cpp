#include "muscl/reconstruction/reconstruction.hpp"

#include "muscl/optim/lp.hpp"
#include "muscl/parallel.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>

namespace muscl {

ReconstructionKind reconstruction_kind_from_string(const std::string& name) {
  if (name == "none") return ReconstructionKind::none;
  if (name == "lsf" || name == "lsf_unlimited") return ReconstructionKind::lsf_unlimited;
  if (name == "lsf_limited" || name == "limited_lsf") return ReconstructionKind::lsf_limited;
  if (name == "lp") return ReconstructionKind::lp;
  if (name == "qp") return ReconstructionKind::qp;
  if (name == "qp_positive") return ReconstructionKind::qp_positive;
  if (name == "minmod") return ReconstructionKind::minmod;
  throw std::invalid_argument("unknown reconstruction '" + name + "'");
}

std::string to_string(ReconstructionKind kind) {
  switch (kind) {
    case ReconstructionKind::none: return "none";
    case ReconstructionKind::lsf_unlimited: return "lsf_unlimited";
    case ReconstructionKind::lsf_limited: return "lsf_limited";
    case ReconstructionKind::lp: return "lp";
    case ReconstructionKind::qp: return "qp";
    case ReconstructionKind::qp_positive: return "qp_positive";
    case ReconstructionKind::minmod: return "minmod";
  }
  return "unknown";
}

namespace {

optim::Vec head(const Point& p, int dim) { return p.head(dim); }

Point padded(const optim::Vec& v) {
  Point p = Point::Zero();
  for (int a = 0; a < v.size(); ++a) p[a] = v[a];
  return p;
}

double sign_of(double m) { return m < 0.0 ? -1.0 : 1.0; }

}  // namespace

CellGeometry cell_geometry(const Mesh& mesh, int e, const ReconstructionConfig& config) {
  const int dim = mesh.dim();
  CellGeometry geo;
  geo.dim = dim;
  geo.hessian = optim::Mat::Zero(dim, dim);
  const auto& nbs = mesh.neighbors(e);
  const Point& xe = mesh.centroid(e);
  for (std::size_t i = 0; i < nbs.size(); ++i) {
    const optim::Vec d = head(nbs[i].centroid - xe, dim);
    double w = 1.0;
    if (config.custom_weight) {
      w = config.custom_weight(e, static_cast<int>(i));
    } else if (config.weights == WeightRule::inverse_distance_squared) {
      w = 1.0 / d.squaredNorm();
    }
    geo.offsets.push_back(d);
    geo.weights.push_back(w);
    geo.hessian.noalias() += w * d * d.transpose();
  }
  Eigen::LLT<optim::Mat> llt(geo.hessian);
  if (llt.info() != Eigen::Success || nbs.size() < static_cast<std::size_t>(dim))
    throw WellPosednessError("least-squares problem is ill-posed on cell " + std::to_string(e) +
                                 " (neighbor offsets do not span R^d)",
                             e);
  return geo;
}

CellProblem assemble_cell_problem(const Mesh& mesh, const CellField& field, int e, int k, const CellGeometry& geo) {
  CellProblem p;
  p.objective.H = geo.hessian;
  p.objective.g = optim::Vec::Zero(geo.dim);
  const auto& nbs = mesh.neighbors(e);
  const double ue = field(e, k);
  for (std::size_t i = 0; i < nbs.size(); ++i) {
    const double m = field(nbs[i].slot, k) - ue;
    p.objective.g.noalias() += geo.weights[i] * m * geo.offsets[i];
    p.constraints.add(sign_of(m) * geo.offsets[i], std::abs(m));
  }
  return p;
}

CellProblem assemble_cell_problem(const Mesh& mesh, const CellField& field, int e, int k,
                                  const ReconstructionConfig& config) {
  return assemble_cell_problem(mesh, field, e, k, cell_geometry(mesh, e, config));
}

double limit_scale_alpha(const Mesh& mesh, const CellField& field, int e, int k, const Point& candidate) {
  const double ue = field(e, k);
  const Point& xe = mesh.centroid(e);
  double alpha = 1.0;
  for (const auto& nb : mesh.neighbors(e)) {
    const double un = field(nb.slot, k);
    const double delta = candidate.dot(nb.centroid - xe);
    double beta = 1.0;
    if (delta > 0.0) {
      beta = (std::max(ue, un) - ue) / delta;
    } else if (delta < 0.0) {
      beta = (std::min(ue, un) - ue) / delta;
    }
    alpha = std::min(alpha, std::clamp(beta, 0.0, 1.0));
  }
  return alpha;
}

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return a > 0.0 ? std::min(a, b) : std::max(a, b);
}

Point minmod_gradient_cartesian(const Mesh& mesh, const CellField& field, int e, int k) {
  const int dim = mesh.dim();
  const Point& xe = mesh.centroid(e);
  const double ue = field(e, k);
  // forward/backward difference quotient per axis
  std::array<double, 3> fwd{};
  std::array<double, 3> bwd{};
  std::array<int, 3> seen_fwd{};
  std::array<int, 3> seen_bwd{};
  for (const auto& nb : mesh.neighbors(e)) {
    const Point d = nb.centroid - xe;
    int axis = 0;
    for (int a = 1; a < dim; ++a)
      if (std::abs(d[a]) > std::abs(d[axis])) axis = a;
    if (std::abs(d[axis]) < (1.0 - 1e-9) * d.norm())
      throw MeshError("cell " + std::to_string(e) + " has a non-axis-aligned neighbor");
    const double slope = (field(nb.slot, k) - ue) / d[axis];
    if (d[axis] > 0.0) {
      fwd[axis] = slope;
      ++seen_fwd[axis];
    } else {
      bwd[axis] = slope;
      ++seen_bwd[axis];
    }
  }
  Point g = Point::Zero();
  for (int a = 0; a < dim; ++a) {
    if (seen_fwd[a] != 1 || seen_bwd[a] != 1)
      throw MeshError("cell " + std::to_string(e) + " is not a Cartesian cell with ghosts attached");
    g[a] = minmod(fwd[a], bwd[a]);
  }
  return g;
}

namespace {

template <typename CellFn>
LinearField map_cells(const Mesh& mesh, const CellField& field, int workers, CellFn&& fn) {
  LinearField out(mesh, field);
  parallel_for(mesh.num_elements(), workers, [&](int e) { fn(e, out); });
  return out;
}

}  // namespace

LinearField reconstruct_unlimited_lsf(const Mesh& mesh, const CellField& field, const ReconstructionConfig& config,
                                      int workers) {
  return map_cells(mesh, field, workers, [&](int e, LinearField& out) {
    const CellGeometry geo = cell_geometry(mesh, e, config);
    const Eigen::LLT<optim::Mat> llt(geo.hessian);
    for (int k = 0; k < field.num_components(); ++k) {
      const CellProblem p = assemble_cell_problem(mesh, field, e, k, geo);
      out.gradient(e, k) = padded(llt.solve(p.objective.g));
    }
  });
}

LinearField reconstruct_limited_lsf(const Mesh& mesh, const CellField& field, const ReconstructionConfig& config,
                                    int workers) {
  return map_cells(mesh, field, workers, [&](int e, LinearField& out) {
    const CellGeometry geo = cell_geometry(mesh, e, config);
    const Eigen::LLT<optim::Mat> llt(geo.hessian);
    for (int k = 0; k < field.num_components(); ++k) {
      const CellProblem p = assemble_cell_problem(mesh, field, e, k, geo);
      const Point candidate = padded(llt.solve(p.objective.g));
      out.gradient(e, k) = limit_scale_alpha(mesh, field, e, k, candidate) * candidate;
    }
  });
}

namespace {

Point solve_qp_or_fallback(const CellProblem& p, double tol, ReconstructionStats* stats) {
  if (stats) ++stats->cell_problems;
  try {
    return padded(optim::solve_qp_active_set(p.objective, p.constraints, tol));
  } catch (const optim::OptimError&) {
    if (stats) ++stats->solver_fallbacks;
    return Point::Zero();
  }
}

}  // namespace

LinearField reconstruct_qp(const Mesh& mesh, const CellField& field, const ReconstructionConfig& config, int workers,
                           ReconstructionStats* stats) {
  return map_cells(mesh, field, workers, [&](int e, LinearField& out) {
    const CellGeometry geo = cell_geometry(mesh, e, config);
    for (int k = 0; k < field.num_components(); ++k)
      out.gradient(e, k) = solve_qp_or_fallback(assemble_cell_problem(mesh, field, e, k, geo), config.qp_tolerance, stats);
  });
}

LinearField reconstruct_lp(const Mesh& mesh, const CellField& field, const ReconstructionConfig& config, int workers,
                           ReconstructionStats* stats) {
  return map_cells(mesh, field, workers, [&](int e, LinearField& out) {
    const CellGeometry geo = cell_geometry(mesh, e, config);
    for (int k = 0; k < field.num_components(); ++k) {
      const CellProblem p = assemble_cell_problem(mesh, field, e, k, geo);
      optim::Vec objective = optim::Vec::Zero(geo.dim);
      for (const auto& row : p.constraints.rows) objective += row.direction;
      if (stats) ++stats->cell_problems;
      try {
        out.gradient(e, k) = padded(optim::solve_lp(objective, p.constraints));
      } catch (const optim::OptimError&) {
        if (stats) ++stats->solver_fallbacks;
        out.gradient(e, k) = Point::Zero();
      }
    }
  });
}

LinearField reconstruct_minmod(const Mesh& mesh, const CellField& field, int workers) {
  return map_cells(mesh, field, workers, [&](int e, LinearField& out) {
    for (int k = 0; k < field.num_components(); ++k) out.gradient(e, k) = minmod_gradient_cartesian(mesh, field, e, k);
  });
}

double intermediate_value(double inner, double outer, const Point& x_inner, const Point& x_outer,
                          const Point& x_face) {
  const double di = (x_inner - x_face).norm();
  const double dn = (x_outer - x_face).norm();
  return (dn * inner + di * outer) / (di + dn);
}

CellProblem assemble_positive_cell_problem(const Mesh& mesh, const CellField& field, int e, int k,
                                           const CellGeometry& geo, PositiveConstraintPoint point) {
  CellProblem p;
  p.objective.H = geo.hessian;
  p.objective.g = optim::Vec::Zero(geo.dim);
  const auto& nbs = mesh.neighbors(e);
  const Point& xe = mesh.centroid(e);
  const double ue = field(e, k);
  for (std::size_t i = 0; i < nbs.size(); ++i) {
    const double un = field(nbs[i].slot, k);
    p.objective.g.noalias() += geo.weights[i] * (un - ue) * geo.offsets[i];
    const Point& xf = mesh.face(nbs[i].face).centroid;
    const double mid = intermediate_value(ue, un, xe, nbs[i].centroid, xf);
    const double m = mid - ue;
    const Point target = point == PositiveConstraintPoint::face_centroid ? xf : nbs[i].centroid;
    p.constraints.add(sign_of(m) * head(target - xe, geo.dim), std::abs(m));
  }
  return p;
}

LinearField reconstruct_qp_positive(const Mesh& mesh, const CellField& field, const ReconstructionConfig& config,
                                    const PositivityContext& context, int workers, ReconstructionStats* stats) {
  const int dim = context.dim;
  const auto physical = [&](int cell) {
    const double rho = field(cell, 0);
    double p = field(cell, dim + 1);
    if (context.variables == euler::LimitingVariables::rho_velocity_energy) {
      double v2 = 0.0;
      for (int a = 0; a < dim; ++a) v2 += field(cell, 1 + a) * field(cell, 1 + a);
      p = (context.gamma - 1.0) * (p - 0.5 * rho * v2);
    }
    return rho > 0.0 && p > 0.0;
  };
  return map_cells(mesh, field, workers, [&](int e, LinearField& out) {
    if (!physical(e)) throw euler::NonPhysicalStateError("non-physical state in cell " + std::to_string(e));
    const CellGeometry geo = cell_geometry(mesh, e, config);
    for (int k = 0; k < field.num_components(); ++k)
      out.gradient(e, k) = solve_qp_or_fallback(
          assemble_positive_cell_problem(mesh, field, e, k, geo, config.positive_point), config.qp_tolerance, stats);
  });
}

LinearField reconstruct(const Mesh& mesh, const CellField& field, const ReconstructionConfig& config, int workers,
                        ReconstructionStats* stats, const PositivityContext* context) {
  switch (config.kind) {
    case ReconstructionKind::none: return LinearField(mesh, field);
    case ReconstructionKind::lsf_unlimited: return reconstruct_unlimited_lsf(mesh, field, config, workers);
    case ReconstructionKind::lsf_limited: return reconstruct_limited_lsf(mesh, field, config, workers);
    case ReconstructionKind::lp: return reconstruct_lp(mesh, field, config, workers, stats);
    case ReconstructionKind::qp: return reconstruct_qp(mesh, field, config, workers, stats);
    case ReconstructionKind::minmod: return reconstruct_minmod(mesh, field, workers);
    case ReconstructionKind::qp_positive:
      if (!context) throw std::invalid_argument("qp_positive reconstruction needs a positivity context");
      return reconstruct_qp_positive(mesh, field, config, *context, workers, stats);
  }
  throw std::invalid_argument("unknown reconstruction kind");
}

double admissibility_violation(const Mesh& mesh, const CellField& field, const LinearField& linear, int e) {
  double worst = 0.0;
  for (int k = 0; k < field.num_components(); ++k) {
    const double ue = field(e, k);
    for (const auto& nb : mesh.neighbors(e)) {
      const double un = field(nb.slot, k);
      const double w = linear.evaluate(e, k, nb.centroid);
      worst = std::max({worst, std::min(ue, un) - w, w - std::max(ue, un)});
    }
  }
  return worst;
}

double least_squares_functional(const Mesh& mesh, const CellField& field, int e, int k, const Point& grad,
                                const CellGeometry& geo) {
  const auto& nbs = mesh.neighbors(e);
  const double ue = field(e, k);
  double j = 0.0;
  for (std::size_t i = 0; i < nbs.size(); ++i) {
    const double r = field(nbs[i].slot, k) - ue - head(grad, geo.dim).dot(geo.offsets[i]);
    j += 0.5 * geo.weights[i] * r * r;
  }
  return j;
}

}  // namespace muscl
