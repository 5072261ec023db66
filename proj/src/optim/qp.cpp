#include "muscl/optim/qp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>

namespace muscl::optim {

namespace {

/// A working-set entry: row index and which bound is held.
/// side = +1 lower bound (direction.x = 0), -1 upper bound, 0 equality row.
struct Active {
  int row;
  int side;
};

using ActiveSet = boost::container::small_vector<Active, 3>;

double bound_of(const BoxedDirectionalConstraints& cons, const Active& a) {
  return a.side < 0 ? cons.rows[a.row].upper : 0.0;
}

/// Residual of `v` against the span of `basis` (orthonormal columns).
Vec orthogonal_part(const boost::container::small_vector<Vec, 3>& basis, const Vec& v) {
  Vec r = v;
  for (const auto& q : basis) r -= q.dot(r) * q;
  return r;
}

/// Minimizer of the objective on {direction_i . y = b_i : i in W} via the
/// null-space method, plus the multipliers mu (H y - g = A^T mu). The
/// particular solution comes from a QR of A^T, so homogeneous bounds give an
/// exactly homogeneous point even for nearly parallel rows.
struct EqpResult {
  Vec y;
  Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1> mu;
};

EqpResult solve_eqp(const Eigen::LLT<Mat>& chol, const QuadraticObjective& obj,
                    const BoxedDirectionalConstraints& cons, const ActiveSet& work) {
  const int d = obj.dim();
  const int k = static_cast<int>(work.size());
  EqpResult out;
  if (k == 0) {
    out.y = chol.solve(obj.g);
    out.mu.resize(0);
    return out;
  }
  Mat at(d, k);
  Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1> b(k);
  for (int i = 0; i < k; ++i) {
    at.col(i) = cons.rows[work[i].row].direction;
    b[i] = bound_of(cons, work[i]);
  }
  const Eigen::HouseholderQR<Mat> qr(at);
  const Mat q = qr.householderQ() * Mat::Identity(d, d);
  const Mat r = qr.matrixQR().topLeftCorner(k, k).template triangularView<Eigen::Upper>();
  // A = R^T Q1^T, so A y0 = b with y0 = Q1 R^{-T} b
  const Vec rb = r.transpose().template triangularView<Eigen::Lower>().solve(b);
  Vec y = q.leftCols(k) * rb;
  if (k < d) {
    const Mat z = q.rightCols(d - k);
    const Mat reduced = z.transpose() * obj.H * z;
    const Vec rhs = z.transpose() * (obj.g - obj.H * y);
    y += z * reduced.llt().solve(rhs);
  }
  const Vec resid = obj.H * y - obj.g;
  const Vec qr_resid = q.leftCols(k).transpose() * resid;
  out.mu = r.template triangularView<Eigen::Upper>().solve(qr_resid);
  out.y = y;
  return out;
}

/// Minimal-norm correction putting x back onto the working-set bounds, so
/// rounding from partial steps does not accumulate.
void snap_to_working_set(const BoxedDirectionalConstraints& cons, const ActiveSet& work, Vec& x) {
  const int k = static_cast<int>(work.size());
  if (k == 0) return;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3> a(k, x.size());
  Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1> r(k);
  for (int i = 0; i < k; ++i) {
    a.row(i) = cons.rows[work[i].row].direction.transpose();
    r[i] = bound_of(cons, work[i]) - a.row(i).dot(x);
  }
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3> gram = a * a.transpose();
  x += a.transpose() * gram.ldlt().solve(r);
}

}  // namespace

Vec solve_qp_active_set(const QuadraticObjective& obj, const BoxedDirectionalConstraints& cons, double tol) {
  const int d = obj.dim();
  const int m = cons.size();
  const Eigen::LLT<Mat> chol(obj.H);
  if (chol.info() != Eigen::Success) throw OptimError("QP Hessian is not positive definite");

  Vec x = Vec::Zero(d);
  ActiveSet work;
  boost::container::small_vector<Vec, 3> basis;
  // in_work[i]: 0 not held, +1 lower, -1 upper, 2 equality.
  boost::container::small_vector<int, 12> in_work(m, 0);

  auto try_add = [&](int row, int side) {
    if (static_cast<int>(work.size()) >= d) return false;
    const Vec& a = cons.rows[row].direction;
    Vec r = orthogonal_part(basis, a);
    const double n = r.norm();
    if (n <= 1e-12 * a.norm()) return false;
    basis.push_back(r / n);
    work.push_back({row, side});
    in_work[row] = side == 0 ? 2 : side;
    return true;
  };
  auto rebuild_basis = [&] {
    basis.clear();
    for (const auto& w : work) {
      Vec r = orthogonal_part(basis, cons.rows[w.row].direction);
      basis.push_back(r / r.norm());
    }
  };

  for (int i = 0; i < m; ++i)
    if (cons.rows[i].upper == 0.0) try_add(i, 0);

  const double gscale = 1.0 + obj.g.norm();
  const int cap = 3 * (d + m);
  for (int iter = 0; iter < cap; ++iter) {
    const EqpResult eqp = solve_eqp(chol, obj, cons, work);
    const Vec p = eqp.y - x;
    const double pnorm = p.norm();
    bool at_eqp_minimum = pnorm <= tol * (1.0 + x.norm());

    if (!at_eqp_minimum) {
      double alpha = 1.0;
      int blocking = -1;
      int blocking_side = 0;
      for (int i = 0; i < m; ++i) {
        if (in_work[i] != 0) continue;
        const Vec& a = cons.rows[i].direction;
        const double ap = a.dot(p);
        const double eps = 1e-14 * a.norm() * pnorm;
        double ratio = std::numeric_limits<double>::infinity();
        int side = 0;
        if (ap > eps) {
          ratio = std::max(0.0, cons.rows[i].upper - a.dot(x)) / ap;
          side = -1;
        } else if (ap < -eps) {
          ratio = std::max(0.0, a.dot(x)) / -ap;
          side = 1;
        }
        if (ratio < alpha) {
          alpha = ratio;
          blocking = i;
          blocking_side = side;
        }
      }
      if (blocking >= 0) {
        x += alpha * p;
        if (!try_add(blocking, blocking_side)) {
          // Numerically dependent on the working set: hold it implicitly.
          in_work[blocking] = blocking_side;
        }
        snap_to_working_set(cons, work, x);
        continue;
      }
      x = eqp.y;
      at_eqp_minimum = true;
    }

    // x minimizes over the working set: check multiplier signs.
    int drop = -1;
    double most_negative = -tol * gscale;
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (work[i].side == 0) continue;
      const double lambda = work[i].side * eqp.mu[static_cast<int>(i)] *
                            cons.rows[work[i].row].direction.norm();
      if (lambda < most_negative) {
        most_negative = lambda;
        drop = static_cast<int>(i);
      }
    }
    if (drop < 0) return x;
    in_work[work[drop].row] = 0;
    work.erase(work.begin() + drop);
    rebuild_basis();
    // Rows held implicitly take part in the ratio test again.
    for (int i = 0; i < m; ++i) {
      if (in_work[i] == 0 || in_work[i] == 2) continue;
      bool listed = std::any_of(work.begin(), work.end(), [&](const Active& a) { return a.row == i; });
      if (!listed) in_work[i] = 0;
    }
  }
  throw QpCyclingError("active-set iteration cap reached", x);
}

Vec qp_oracle_enumerate(const QuadraticObjective& obj, const BoxedDirectionalConstraints& cons) {
  const int d = obj.dim();
  const int m = cons.size();
  using Big = Eigen::MatrixXd;

  Vec best = Vec::Zero(d);
  double best_value = 0.0;  // objective at the origin, always feasible

  auto consider = [&](const std::vector<std::pair<int, double>>& eqs) {
    const int k = static_cast<int>(eqs.size());
    Big kkt = Big::Zero(d + k, d + k);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + k);
    kkt.topLeftCorner(d, d) = obj.H;
    rhs.head(d) = obj.g;
    for (int i = 0; i < k; ++i) {
      const Vec& a = cons.rows[eqs[i].first].direction;
      kkt.block(0, d + i, d, 1) = a;
      kkt.block(d + i, 0, 1, d) = a.transpose();
      rhs[d + i] = eqs[i].second;
    }
    Eigen::FullPivLU<Big> lu(kkt);
    if (lu.rank() < d + k) return;
    const Eigen::VectorXd sol = lu.solve(rhs);
    Vec y = sol.head(d);
    if (max_violation(cons, y) > 1e-11) return;
    const double v = obj.value(y);
    if (v < best_value) {
      best_value = v;
      best = y;
    }
  };

  // Depth-first over subsets of size <= d, each row at its lower or upper
  // bound (a single choice when the two coincide).
  std::vector<std::pair<int, double>> eqs;
  auto recurse = [&](auto&& self, int start) -> void {
    consider(eqs);
    if (static_cast<int>(eqs.size()) == d) return;
    for (int i = start; i < m; ++i) {
      eqs.push_back({i, 0.0});
      self(self, i + 1);
      eqs.pop_back();
      if (cons.rows[i].upper != 0.0) {
        eqs.push_back({i, cons.rows[i].upper});
        self(self, i + 1);
        eqs.pop_back();
      }
    }
  };
  recurse(recurse, 0);
  return best;
}

double max_violation(const BoxedDirectionalConstraints& cons, const Vec& x) {
  double worst = 0.0;
  for (const auto& r : cons.rows) {
    const double v = r.direction.dot(x);
    const double scale = std::max(1.0, r.upper);
    worst = std::max({worst, -v / scale, (v - r.upper) / scale});
  }
  return worst;
}

}  // namespace muscl::optim
