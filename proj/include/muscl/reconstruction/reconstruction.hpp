#pragma once

#include "muscl/field.hpp"
#include "muscl/mesh/mesh.hpp"
#include "muscl/optim/qp.hpp"
#include "muscl/physics/euler.hpp"

#include <atomic>
#include <functional>
#include <stdexcept>
#include <string>

namespace muscl {

enum class ReconstructionKind { none, lsf_unlimited, lsf_limited, lp, qp, qp_positive, minmod };

ReconstructionKind reconstruction_kind_from_string(const std::string& name);
std::string to_string(ReconstructionKind kind);

enum class WeightRule { uniform, inverse_distance_squared };

/// Where the positivity-preserving variant bounds the linear function.
enum class PositiveConstraintPoint { face_centroid, neighbor_centroid };

struct ReconstructionConfig {
  ReconstructionKind kind = ReconstructionKind::qp;
  WeightRule weights = WeightRule::uniform;
  /// Overrides `weights` when set: weight of the i-th neighbor of element e.
  std::function<double(int e, int local_neighbor)> custom_weight;
  double qp_tolerance = optim::kDefaultQpTolerance;
  PositiveConstraintPoint positive_point = PositiveConstraintPoint::face_centroid;
};

class WellPosednessError : public std::runtime_error {
 public:
  WellPosednessError(const std::string& what, int cell) : std::runtime_error(what), cell_(cell) {}
  int cell() const { return cell_; }

 private:
  int cell_;
};

/// Counters shared across workers.
struct ReconstructionStats {
  std::atomic<long> solver_fallbacks{0};
  std::atomic<long> cell_problems{0};
};

/// Per-cell least-squares geometry: offsets d = x_E' - x_E, weights and the
/// Hessian H = sum w d (x) d. Shared by all state components.
struct CellGeometry {
  int dim = 0;
  boost::container::small_vector<optim::Vec, 12> offsets;
  boost::container::small_vector<double, 12> weights;
  optim::Mat hessian;
};

CellGeometry cell_geometry(const Mesh& mesh, int e, const ReconstructionConfig& config);

struct CellProblem {
  optim::QuadraticObjective objective;
  optim::BoxedDirectionalConstraints constraints;
};

/// QP data for component k of element e: H, g = sum w m d and one row per
/// neighbor with direction sign(m) d and upper |m|, where m = u_E' - u_E and
/// sign(0) = +1. `field` is the extended field (elements then ghosts).
/// Throws WellPosednessError if H is singular.
CellProblem assemble_cell_problem(const Mesh& mesh, const CellField& field, int e, int k,
                                  const ReconstructionConfig& config = {});
CellProblem assemble_cell_problem(const Mesh& mesh, const CellField& field, int e, int k, const CellGeometry& geo);

/// Largest beta in [0, 1] keeping u_E + beta grad.(x_E' - x_E) within the
/// neighbor bounds, minimized over neighbors.
double limit_scale_alpha(const Mesh& mesh, const CellField& field, int e, int k, const Point& candidate);

/// Componentwise minmod of one-sided difference quotients along each axis.
/// Requires an axis-aligned (Cartesian) neighborhood.
Point minmod_gradient_cartesian(const Mesh& mesh, const CellField& field, int e, int k);

double minmod(double a, double b);

LinearField reconstruct_unlimited_lsf(const Mesh& mesh, const CellField& field, const ReconstructionConfig& config,
                                      int workers = 1);
LinearField reconstruct_limited_lsf(const Mesh& mesh, const CellField& field, const ReconstructionConfig& config,
                                    int workers = 1);
LinearField reconstruct_qp(const Mesh& mesh, const CellField& field, const ReconstructionConfig& config,
                           int workers = 1, ReconstructionStats* stats = nullptr);
LinearField reconstruct_lp(const Mesh& mesh, const CellField& field, const ReconstructionConfig& config,
                           int workers = 1, ReconstructionStats* stats = nullptr);
LinearField reconstruct_minmod(const Mesh& mesh, const CellField& field, int workers = 1);

/// Physical-state context of the positivity-preserving variant; `field`
/// passed to it holds limiting variables.
struct PositivityContext {
  int dim = 0;
  euler::LimitingVariables variables = euler::LimitingVariables::rho_velocity_energy;
  double gamma = euler::kGamma;
};

/// Intermediate value between a cell and its neighbor, weighted by the
/// distances of the two centroids to the face centroid.
double intermediate_value(double inner, double outer, const Point& x_inner, const Point& x_outer,
                          const Point& x_face);

CellProblem assemble_positive_cell_problem(const Mesh& mesh, const CellField& field, int e, int k,
                                           const CellGeometry& geo, PositiveConstraintPoint point);

LinearField reconstruct_qp_positive(const Mesh& mesh, const CellField& field, const ReconstructionConfig& config,
                                    const PositivityContext& context, int workers = 1,
                                    ReconstructionStats* stats = nullptr);

/// Dispatches on config.kind (qp_positive requires `context`).
LinearField reconstruct(const Mesh& mesh, const CellField& field, const ReconstructionConfig& config,
                        int workers = 1, ReconstructionStats* stats = nullptr,
                        const PositivityContext* context = nullptr);

/// Largest violation of the neighbor-centroid bounds by cell e's linear
/// function over all components (0 when admissible).
double admissibility_violation(const Mesh& mesh, const CellField& field, const LinearField& linear, int e);

/// Least-squares functional J_E(w) for component k with gradient `grad`.
double least_squares_functional(const Mesh& mesh, const CellField& field, int e, int k, const Point& grad,
                                const CellGeometry& geo);

}  // namespace muscl
