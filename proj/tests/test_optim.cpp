#include "muscl/optim/lp.hpp"
#include "muscl/optim/qp.hpp"

#include <doctest.h>

#include <random>

using namespace muscl::optim;

namespace {

Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

struct Instance {
  QuadraticObjective obj;
  BoxedDirectionalConstraints cons;
};

Instance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim_dist(1, 3);
  std::uniform_int_distribution<int> rows_dist(1, 8);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int d = dim_dist(rng);
  const int m = rows_dist(rng);
  Instance in;
  Mat a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = normal(rng);
  in.obj.H = a * a.transpose() + 0.5 * Mat::Identity(d, d);
  in.obj.g = Vec(d);
  for (int i = 0; i < d; ++i) in.obj.g[i] = 3.0 * normal(rng);
  for (int r = 0; r < m; ++r) {
    Vec dir(d);
    for (int i = 0; i < d; ++i) dir[i] = normal(rng);
    // a few flat rows, as produced by equal neighbor values
    const double upper = unit(rng) < 0.15 ? 0.0 : unit(rng);
    in.cons.add(dir, upper);
  }
  return in;
}

}  // namespace

TEST_CASE("one-dimensional cell problem clips the least-squares slope") {
  // u = (0, 1, 3) at x = -1, 0, 1: H = 2, g = 3, rows [0, 1] and [0, 2]
  QuadraticObjective obj{Mat::Constant(1, 1, 2.0), vec({3.0})};
  BoxedDirectionalConstraints cons;
  cons.add(vec({1.0}), 1.0);
  cons.add(vec({1.0}), 2.0);
  CHECK(solve_qp_active_set(obj, cons)[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(qp_oracle_enumerate(obj, cons)[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(solve_lp(vec({2.0}), cons)[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("unconstrained minimizer is returned when feasible") {
  QuadraticObjective obj{Mat::Identity(2, 2), vec({0.3, -0.2})};
  BoxedDirectionalConstraints cons;
  cons.add(vec({1.0, 0.0}), 1.0);
  cons.add(vec({0.0, -1.0}), 1.0);
  const Vec x = solve_qp_active_set(obj, cons);
  CHECK(x[0] == doctest::Approx(0.3));
  CHECK(x[1] == doctest::Approx(-0.2));
}

TEST_CASE("flat rows pin the solution") {
  QuadraticObjective obj{Mat::Identity(2, 2), vec({1.0, 1.0})};
  BoxedDirectionalConstraints cons;
  cons.add(vec({1.0, 0.0}), 0.0);
  cons.add(vec({0.0, 1.0}), 0.0);
  const Vec x = solve_qp_active_set(obj, cons);
  CHECK(x.norm() == 0.0);
}

TEST_CASE("dependent rows do not break the active set") {
  QuadraticObjective obj{Mat::Identity(2, 2), vec({5.0, 5.0})};
  BoxedDirectionalConstraints cons;
  cons.add(vec({1.0, 0.0}), 1.0);
  cons.add(vec({2.0, 0.0}), 2.0);
  cons.add(vec({-1.0, 0.0}), 0.0);
  cons.add(vec({1.0, 1.0}), 1.5);
  const Vec x = solve_qp_active_set(obj, cons);
  const Vec y = qp_oracle_enumerate(obj, cons);
  CHECK((x - y).lpNorm<Eigen::Infinity>() < 1e-12);
  CHECK(max_violation(cons, x) <= 1e-12);
}

TEST_CASE("non-positive-definite Hessian is rejected") {
  QuadraticObjective obj{Mat::Zero(2, 2), vec({1.0, 0.0})};
  BoxedDirectionalConstraints cons;
  cons.add(vec({1.0, 0.0}), 1.0);
  CHECK_THROWS_AS(solve_qp_active_set(obj, cons), OptimError);
}

TEST_CASE("active set agrees with the enumeration oracle on random instances") {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 3000; ++trial) {
    const Instance in = random_instance(rng);
    const Vec x = solve_qp_active_set(in.obj, in.cons);
    const Vec y = qp_oracle_enumerate(in.obj, in.cons);
    REQUIRE(x.size() == y.size());
    worst = std::max(worst, (x - y).lpNorm<Eigen::Infinity>());
    CHECK(max_violation(in.cons, x) <= 1e-10);
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("QP solution is optimal among random feasible points") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance in = random_instance(rng);
    const Vec x = solve_qp_active_set(in.obj, in.cons);
    const double best = in.obj.value(x);
    // shrink random points toward the feasible origin until they fit
    for (int k = 0; k < 20; ++k) {
      Vec y = Vec::Random(in.obj.dim());
      while (max_violation(in.cons, y) > 0.0 && y.norm() > 1e-14) y *= 0.5 * unit(rng);
      if (max_violation(in.cons, y) > 0.0) continue;
      CHECK(best <= in.obj.value(y) + 1e-12);
    }
  }
}

TEST_CASE("LP: zero objective returns the origin") {
  BoxedDirectionalConstraints cons;
  cons.add(vec({1.0, 1.0}), 1.0);
  cons.add(vec({1.0, -1.0}), 1.0);
  CHECK(solve_lp(vec({0.0, 0.0}), cons).norm() == 0.0);
}

TEST_CASE("LP: box corner is found") {
  BoxedDirectionalConstraints cons;
  cons.add(vec({1.0, 0.0}), 2.0);
  cons.add(vec({0.0, 1.0}), 3.0);
  const Vec x = solve_lp(vec({1.0, 1.0}), cons);
  CHECK(x[0] == doctest::Approx(2.0));
  CHECK(x[1] == doctest::Approx(3.0));
}

TEST_CASE("LP: unbounded direction is reported") {
  BoxedDirectionalConstraints cons;
  cons.add(vec({1.0, 0.0}), 1.0);
  CHECK_THROWS_AS(solve_lp(vec({0.0, 1.0}), cons), LpUnboundedError);
}

TEST_CASE("LP optimum matches vertex enumeration") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 1 + trial % 3;
    BoxedDirectionalConstraints cons;
    // opposite pairs keep the feasible set bounded
    for (int i = 0; i < d; ++i) {
      Vec e = Vec::Zero(d);
      e[i] = 1.0;
      cons.add(e, 1.0 + unit(rng));
      cons.add(-e, 1.0 + unit(rng));
    }
    for (int r = 0; r < 3; ++r) {
      Vec dir(d);
      for (int i = 0; i < d; ++i) dir[i] = normal(rng);
      cons.add(dir, unit(rng) < 0.2 ? 0.0 : unit(rng));
    }
    Vec c(d);
    for (int i = 0; i < d; ++i) c[i] = normal(rng);
    const Vec x = solve_lp(c, cons);
    CHECK(max_violation(cons, x) <= 1e-10);
    // a small regularization turns the oracle into an LP vertex search
    QuadraticObjective obj{1e-9 * Mat::Identity(d, d), c};
    const Vec y = qp_oracle_enumerate(obj, cons);
    CHECK(std::abs(c.dot(x) - c.dot(y)) <= 1e-6);
  }
}
