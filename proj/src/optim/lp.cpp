#include "muscl/optim/lp.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <vector>

namespace muscl::optim {

namespace {

enum class Status { basic, lower, upper, free };

class BoundedSimplex {
 public:
  BoundedSimplex(const Vec& objective, const BoxedDirectionalConstraints& cons)
      : d_(static_cast<int>(objective.size())), m_(cons.size()), n_(d_ + m_), cons_(cons) {
    tableau_ = Eigen::MatrixXd::Zero(m_, n_);
    cost_ = Eigen::VectorXd::Zero(n_);
    cost_.head(d_) = objective;
    double scale = 1.0;
    for (int i = 0; i < m_; ++i) {
      // Basis of slacks with B = -I, so B^-1 A = [-a_i, e_i].
      tableau_.block(i, 0, 1, d_) = -cons.rows[i].direction.transpose();
      tableau_(i, d_ + i) = 1.0;
      scale = std::max(scale, cons.rows[i].direction.cwiseAbs().maxCoeff());
    }
    eps_ = 1e-12 * scale * (1.0 + objective.cwiseAbs().maxCoeff());
    basis_.resize(m_);
    value_.assign(m_, 0.0);
    status_.assign(n_, Status::lower);
    for (int j = 0; j < d_; ++j) status_[j] = Status::free;
    for (int i = 0; i < m_; ++i) {
      basis_[i] = d_ + i;
      status_[d_ + i] = Status::basic;
    }
  }

  Vec solve() {
    pivot_free_variables_in();
    const int cap = 50 * (n_ + 1);
    for (int iter = 0; iter < cap; ++iter) {
      if (!step()) return extract();
    }
    throw OptimError("simplex iteration cap reached");
  }

 private:
  double lower(int j) const { return j < d_ ? -std::numeric_limits<double>::infinity() : 0.0; }
  double upper(int j) const {
    return j < d_ ? std::numeric_limits<double>::infinity() : cons_.rows[j - d_].upper;
  }

  void pivot(int r, int j) {
    const double piv = tableau_(r, j);
    tableau_.row(r) /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = tableau_(i, j);
      if (f != 0.0) tableau_.row(i) -= f * tableau_.row(r);
    }
  }

  // Degenerate pivots at the origin: every free variable that can enter
  // replaces the slack with the largest pivot magnitude.
  void pivot_free_variables_in() {
    for (int j = 0; j < d_; ++j) {
      int best = -1;
      double mag = eps_;
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] < d_) continue;
        if (std::abs(tableau_(i, j)) > mag) {
          mag = std::abs(tableau_(i, j));
          best = i;
        }
      }
      if (best < 0) continue;
      const int leaving = basis_[best];
      pivot(best, j);
      basis_[best] = j;
      status_[j] = Status::basic;
      status_[leaving] = Status::lower;
      value_[best] = 0.0;
    }
  }

  double nonbasic_value(int j) const { return status_[j] == Status::upper ? upper(j) : 0.0; }

  /// One Bland iteration; false when optimal.
  bool step() {
    // Reduced costs of nonbasic variables.
    int entering = -1;
    double dir = 0.0;
    for (int j = 0; j < n_; ++j) {
      if (status_[j] == Status::basic) continue;
      double rc = cost_[j];
      for (int i = 0; i < m_; ++i) rc -= cost_[basis_[i]] * tableau_(i, j);
      const bool up = (status_[j] == Status::lower || status_[j] == Status::free) && rc > eps_;
      const bool down = (status_[j] == Status::upper || status_[j] == Status::free) && rc < -eps_;
      if (up || down) {
        if (j >= d_ && upper(j) == 0.0) continue;  // fixed at zero
        entering = j;
        dir = up ? 1.0 : -1.0;
        break;
      }
    }
    if (entering < 0) return false;

    // Ratio test: basic i changes at rate -dir * T(i, entering).
    double t = upper(entering) - lower(entering);
    int leave_row = -1;
    bool leave_to_upper = false;
    for (int i = 0; i < m_; ++i) {
      const int b = basis_[i];
      if (b < d_) continue;
      const double rate = -dir * tableau_(i, entering);
      double ti = std::numeric_limits<double>::infinity();
      bool to_upper = false;
      if (rate < -eps_) {
        ti = std::max(0.0, value_[i] - lower(b)) / -rate;
      } else if (rate > eps_) {
        ti = std::max(0.0, upper(b) - value_[i]) / rate;
        to_upper = true;
      }
      if (ti < t || (ti == t && leave_row >= 0 && b < basis_[leave_row])) {
        t = ti;
        leave_row = i;
        leave_to_upper = to_upper;
      }
    }
    if (!std::isfinite(t)) throw LpUnboundedError("linear program is unbounded");

    for (int i = 0; i < m_; ++i) value_[i] += -dir * tableau_(i, entering) * t;
    if (leave_row < 0) {
      status_[entering] = status_[entering] == Status::lower ? Status::upper : Status::lower;
      return true;
    }
    const double entering_value = nonbasic_value(entering) + dir * t;
    const int leaving = basis_[leave_row];
    pivot(leave_row, entering);
    basis_[leave_row] = entering;
    status_[entering] = Status::basic;
    status_[leaving] = leave_to_upper ? Status::upper : Status::lower;
    value_[leave_row] = entering_value;
    return true;
  }

  Vec extract() const {
    Vec x = Vec::Zero(d_);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < d_) x[basis_[i]] = value_[i];
    return x;
  }

  int d_;
  int m_;
  int n_;
  const BoxedDirectionalConstraints& cons_;
  Eigen::MatrixXd tableau_;
  Eigen::VectorXd cost_;
  std::vector<int> basis_;
  std::vector<double> value_;
  std::vector<Status> status_;
  double eps_ = 1e-12;
};

}  // namespace

Vec solve_lp(const Vec& objective, const BoxedDirectionalConstraints& cons) {
  if (objective.isZero(0.0)) return Vec::Zero(objective.size());
  return BoundedSimplex(objective, cons).solve();
}

}  // namespace muscl::optim
