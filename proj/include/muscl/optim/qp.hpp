#pragma once

#include <Eigen/Core>
#include <boost/container/small_vector.hpp>

#include <stdexcept>

namespace muscl::optim {

/// Dense vector/matrix types with inline storage for d <= 3.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;

/// One row 0 <= direction . x <= upper. Rows with upper == 0 are equalities.
struct DirectionalRow {
  Vec direction;
  double upper = 0.0;
};

struct BoxedDirectionalConstraints {
  boost::container::small_vector<DirectionalRow, 12> rows;

  void add(Vec direction, double upper) { rows.push_back({std::move(direction), upper}); }
  int size() const { return static_cast<int>(rows.size()); }
};

/// Objective 1/2 x.Hx - g.x with H symmetric positive definite.
struct QuadraticObjective {
  Mat H;
  Vec g;

  int dim() const { return static_cast<int>(g.size()); }
  double value(const Vec& x) const { return 0.5 * x.dot(H * x) - g.dot(x); }
};

class OptimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the active-set iteration exceeds its cap; carries the last
/// (feasible) iterate.
class QpCyclingError : public OptimError {
 public:
  QpCyclingError(const std::string& what, Vec last) : OptimError(what), last_(std::move(last)) {}
  const Vec& last_iterate() const { return last_; }

 private:
  Vec last_;
};

constexpr double kDefaultQpTolerance = 1e-10;

/// Primal active-set method started at x = 0 with every zero-width row in the
/// working set. Drops the most negative multiplier; blocking ties go to the
/// lowest row index. Throws OptimError if H is not positive definite and
/// QpCyclingError after 3 * (d + rows) iterations.
Vec solve_qp_active_set(const QuadraticObjective& obj, const BoxedDirectionalConstraints& cons,
                        double tol = kDefaultQpTolerance);

/// Brute-force reference: minimizes over every linearly independent set of at
/// most d active bounds and keeps the best feasible candidate. Intended for
/// tests (rows <= 12, d <= 3).
Vec qp_oracle_enumerate(const QuadraticObjective& obj, const BoxedDirectionalConstraints& cons);

/// Largest bound violation of x, relative to max(1, upper) per row.
double max_violation(const BoxedDirectionalConstraints& cons, const Vec& x);

}  // namespace muscl::optim
