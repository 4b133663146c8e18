#include "doctest.h"

#include <random>

#include "relupwa/polyhedron.hpp"
#include "test_support.hpp"

using namespace relupwa;
using testing_support::scalar;
using testing_support::vec;

TEST_CASE("split examples") {
  const Polyhedron p = Polyhedron::box(scalar(0), scalar(3));
  auto [left, right] = split(p, scalar(1.0), -1.0);
  CHECK(left.as_box()->second[0] == doctest::Approx(1.0));
  CHECK(left.as_box()->first[0] == doctest::Approx(0.0));
  CHECK(right.as_box()->first[0] == doctest::Approx(1.0));
  CHECK(right.as_box()->second[0] == doctest::Approx(3.0));

  const Polyhedron sq = Polyhedron::box(vec({0, 0}), vec({1, 1}));
  auto [in, out] = split(sq, vec({1, 0}), -2.0);
  CHECK(in.is_full_dim());
  CHECK(out.is_empty());

  // Successive splits reproduce the first breakpoints of the reference PWA function.
  auto [a, rest] = split(p, scalar(1.0), -2.0 / 3.0);
  auto [b, c] = split(rest, scalar(1.0), -1.0);
  auto ab = a.as_box(), bb = b.as_box(), cb = c.as_box();
  REQUIRE(ab);
  REQUIRE(bb);
  REQUIRE(cb);
  CHECK(ab->second[0] == doctest::Approx(2.0 / 3.0));
  CHECK(bb->first[0] == doctest::Approx(2.0 / 3.0));
  CHECK(bb->second[0] == doctest::Approx(1.0));
  CHECK(cb->first[0] == doctest::Approx(1.0));
}

TEST_CASE("split with a zero normal") {
  const Polyhedron p = Polyhedron::box(scalar(0), scalar(1));
  auto [n1, p1] = split(p, scalar(0.0), 1.0);  // 1 <= 0 fails: all of P on the >= side
  CHECK(n1.is_empty());
  CHECK(p1.is_full_dim());
  auto [n2, p2] = split(p, scalar(0.0), -1.0);
  CHECK(n2.is_full_dim());
  CHECK(p2.is_empty());
}

TEST_CASE("is_full_dim and contains") {
  const Polyhedron sq = Polyhedron::box(vec({0, 0}), vec({1, 1}));
  CHECK(sq.is_full_dim(1e-8));
  CHECK(Polyhedron::box(scalar(0), scalar(0)).is_full_dim(1e-8) == false);
  CHECK(Polyhedron::box(scalar(2.0 / 3.0), scalar(1.0)).is_full_dim(1e-8));
  CHECK(sq.contains(vec({0.5, 0.5})));
  CHECK(!sq.contains(vec({2, 0})));
  CHECK(sq.contains(vec({1.0 + 5e-10, 0.0}), 1e-9));
  CHECK(Polyhedron::empty(2).is_empty());
  CHECK(Polyhedron::universe(2).contains(vec({1e9, -1e9})));
}

TEST_CASE("construction normalizes rows and rejects bad data") {
  Eigen::MatrixXd A(3, 2);
  A << 3, 4, 0, 0, 0, 0;
  const Polyhedron p(A, vec({10, 1, -1}));
  // zero row with b >= 0 is dropped; with b < 0 it marks the set empty
  CHECK(p.num_constraints() == 2);
  CHECK(p.A().row(0).norm() == doctest::Approx(1.0));
  CHECK(p.b()[0] == doctest::Approx(2.0));
  CHECK(p.is_empty());
  CHECK_THROWS_AS(Polyhedron(A, vec({1, 2})), DimensionError);
  Eigen::MatrixXd bad(1, 1);
  bad << std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(Polyhedron(bad, scalar(1)), DimensionError);
}

TEST_CASE("redundancy removal and bounding boxes") {
  Polyhedron p = Polyhedron::box(vec({0, 0}), vec({1, 1})).with_constraint(vec({1, 1}), 5.0);
  CHECK(p.num_constraints() == 5);
  const Polyhedron q = p.without_redundant();
  CHECK(q.num_constraints() == 4);
  CHECK(q.as_box());

  const Polyhedron tri = Polyhedron::box(vec({0, 0}), vec({2, 2})).with_constraint(vec({1, 1}), 1.0);
  CHECK(!tri.as_box());
  auto bb = tri.bounding_box();
  REQUIRE(bb);
  CHECK(bb->second[0] == doctest::Approx(1.0));
  CHECK(bb->second[1] == doctest::Approx(1.0));
  CHECK(!Polyhedron::universe(1).bounding_box());
}

TEST_CASE("property: normalization is idempotent") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int t = 0; t < 100; ++t) {
    Eigen::MatrixXd A(5, 3);
    Eigen::VectorXd b(5);
    for (Eigen::Index i = 0; i < A.size(); ++i) A.data()[i] = 10 * g(rng);
    for (Eigen::Index i = 0; i < 5; ++i) b[i] = 10 * g(rng);
    const Polyhedron once = normalized(Polyhedron(A, b));
    const Polyhedron twice = normalized(once);
    CHECK(once.A() == twice.A());
    CHECK(once.b() == twice.b());
  }
}

TEST_CASE("property: split covers P and nothing outside it") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(-2, 2);
  const Polyhedron box = testing_support::cube(2, -2, 2);
  for (int t = 0; t < 100; ++t) {
    Polyhedron p = box;
    for (int k = 0; k < 3; ++k) p = p.with_constraint(vec({g(rng), g(rng)}), std::abs(g(rng)));
    const Eigen::VectorXd w = vec({g(rng), g(rng)});
    const double beta = g(rng);
    auto [lo, hi] = split(p, w, beta);
    for (int s = 0; s < 200; ++s) {
      const Eigen::VectorXd x = vec({u(rng), u(rng)});
      const bool in_parts = lo.contains(x) || hi.contains(x);
      if (p.contains(x)) CHECK(in_parts);
      if (p.max_violation(x) > 1e-6) CHECK(!in_parts);
    }
  }
}
