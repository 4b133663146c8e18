#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "relupwa/lp.hpp"
#include "test_support.hpp"

using namespace relupwa;
using testing_support::vec;

namespace {

LinearProgram lp1d(double cost, std::vector<std::pair<double, double>> rows) {
  LinearProgram lp;
  lp.cost = Eigen::VectorXd::Constant(1, cost);
  lp.A.resize(static_cast<Eigen::Index>(rows.size()), 1);
  lp.b.resize(lp.A.rows());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    lp.A(static_cast<Eigen::Index>(i), 0) = rows[i].first;
    lp.b[static_cast<Eigen::Index>(i)] = rows[i].second;
  }
  return lp;
}

}  // namespace

TEST_CASE("solve_lp small cases") {
  // min x s.t. x >= 1, x <= 3
  LpOutcome out = solve_lp(lp1d(1.0, {{-1.0, -1.0}, {1.0, 3.0}}));
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK((*out.optimizer)[0] == doctest::Approx(1.0));
  CHECK(out.value == doctest::Approx(1.0));

  out = solve_lp(lp1d(0.0, {{1.0, -1.0}, {-1.0, -1.0}}));
  CHECK(out.status == LpStatus::Infeasible);
  CHECK(!out.optimizer);

  out = solve_lp(lp1d(-1.0, {{-1.0, 0.0}}));
  CHECK(out.status == LpStatus::Unbounded);
  CHECK(!out.optimizer);
}

TEST_CASE("solve_lp on the scalar inverse problem slice at x = 1.5") {
  const double x = 1.5;
  LinearProgram lp;
  lp.cost = vec({1.0, -1.0});
  lp.A.resize(6, 2);
  lp.b.resize(6);
  // -x <= z1, x - 2 <= z1, 7/2 x - 5 <= z1
  lp.A.row(0) << -1, 0;
  lp.b[0] = x;
  lp.A.row(1) << -1, 0;
  lp.b[1] = -(x - 2);
  lp.A.row(2) << -1, 0;
  lp.b[2] = -(3.5 * x - 5);
  // z2 <= x, z2 <= -x/2 + 1, z2 <= -5/2 x + 5
  lp.A.row(3) << 0, 1;
  lp.b[3] = x;
  lp.A.row(4) << 0, 1;
  lp.b[4] = -0.5 * x + 1;
  lp.A.row(5) << 0, 1;
  lp.b[5] = -2.5 * x + 5;
  const LpOutcome out = solve_lp(lp);
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK((*out.optimizer)[0] == doctest::Approx(0.25));
  CHECK((*out.optimizer)[1] == doctest::Approx(0.25));
}

TEST_CASE("solve_lp respects variable bounds and degenerate vertices") {
  LinearProgram lp;
  lp.cost = vec({-1.0, -1.0});
  lp.A.resize(0, 2);
  lp.b.resize(0);
  lp.lower = vec({0.0, -1.0});
  lp.upper = vec({2.0, 0.5});
  LpOutcome out = solve_lp(lp);
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(out.value == doctest::Approx(-2.5));

  // Many constraints through one vertex (classic cycling setup for Dantzig's rule).
  lp = LinearProgram{};
  lp.cost = vec({-0.75, 150.0, -0.02, 6.0});
  lp.A.resize(3, 4);
  lp.A << 0.25, -60, -0.04, 9, 0.5, -90, -0.02, 3, 0, 0, 1, 0;
  lp.b = vec({0, 0, 1});
  lp.lower = Eigen::VectorXd::Zero(4);
  out = solve_lp(lp);
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(out.value == doctest::Approx(-0.05));
}

TEST_CASE("solve_lp rejects malformed data") {
  LinearProgram lp = lp1d(1.0, {{1.0, 1.0}});
  lp.b = vec({1.0, 2.0});
  CHECK_THROWS_AS(solve_lp(lp), DimensionError);
  lp = lp1d(std::numeric_limits<double>::infinity(), {{1.0, 1.0}});
  CHECK_THROWS_AS(solve_lp(lp), DimensionError);
}

TEST_CASE("property: strong duality and primal feasibility on random bounded LPs") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> dim(1, 6), rows(0, 14);
  int solved = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int d = dim(rng);
    const int m = 2 * d + rows(rng) % (21 - 2 * d);
    // Random rows plus a bounding box keep the primal bounded; a feasible point
    // x0 keeps it feasible.
    Eigen::MatrixXd A(m, d);
    Eigen::VectorXd x0(d), b(m);
    for (int j = 0; j < d; ++j) x0[j] = g(rng);
    for (int i = 0; i < m; ++i) {
      if (i < 2 * d) {
        A.row(i).setZero();
        A(i, i / 2) = i % 2 ? -1.0 : 1.0;
        b[i] = 5.0;
      } else {
        for (int j = 0; j < d; ++j) A(i, j) = g(rng);
        b[i] = A.row(i).dot(x0) + std::abs(g(rng));
      }
    }
    for (int i = 0; i < 2 * d; ++i) b[i] = std::max(b[i], std::abs(x0[i / 2]) + 0.1);
    Eigen::VectorXd c(d);
    for (int j = 0; j < d; ++j) c[j] = g(rng);

    const LpOutcome primal = solve_lp({c, A, b, {}, {}});
    REQUIRE(primal.status == LpStatus::Optimal);
    CHECK((A * *primal.optimizer - b).maxCoeff() <= 1e-8);

    // Dual: max -b'y s.t. A'y = -c, y >= 0, written as a minimization.
    LinearProgram dual;
    dual.cost = b;
    dual.A.resize(2 * d, m);
    dual.A << A.transpose(), -A.transpose();
    dual.b.resize(2 * d);
    dual.b << -c, c;
    dual.lower = Eigen::VectorXd::Zero(m);
    const LpOutcome dout = solve_lp(dual);
    REQUIRE(dout.status == LpStatus::Optimal);
    CHECK(std::abs(primal.value + dout.value) <= 1e-7 * (1.0 + std::abs(primal.value)));
    ++solved;
  }
  CHECK(solved == 300);
}

TEST_CASE("chebyshev_center") {
  Eigen::MatrixXd A(4, 2);
  A << 1, 0, -1, 0, 0, 1, 0, -1;
  auto ball = chebyshev_center(A, vec({1, 0, 1, 0}));
  REQUIRE(ball);
  CHECK(ball->center[0] == doctest::Approx(0.5));
  CHECK(ball->center[1] == doctest::Approx(0.5));
  CHECK(ball->radius == doctest::Approx(0.5));

  Eigen::MatrixXd B(2, 1);
  B << 1, -1;
  CHECK(!chebyshev_center(B, vec({0.0, -1.0})));

  ball = chebyshev_center(B, vec({1.0, -2.0 / 3.0}));
  REQUIRE(ball);
  CHECK(ball->center[0] == doctest::Approx(5.0 / 6.0));
  CHECK(ball->radius == doctest::Approx(1.0 / 6.0));

  // Half-line: unbounded radius, center from the truncated problem.
  Eigen::MatrixXd H(1, 1);
  H << 1;
  ball = chebyshev_center(H, vec({0.0}));
  REQUIRE(ball);
  CHECK(std::isinf(ball->radius));
  CHECK(ball->center[0] <= 0.0);
}
