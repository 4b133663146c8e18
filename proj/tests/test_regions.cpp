#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "relupwa/bounds.hpp"
#include "relupwa/regions.hpp"
#include "test_support.hpp"

using namespace relupwa;
using testing_support::scalar;
using testing_support::vec;

namespace {

ReluNet relu_identity() {
  return ReluNet(1, {Layer{Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Zero(1)}},
                 Layer{Eigen::MatrixXd::Ones(1, 1), {}});
}

ReluNet zero_net(Eigen::Index n0) {
  return ReluNet(n0, {Layer{Eigen::MatrixXd::Zero(3, n0), Eigen::VectorXd::Zero(3)}},
                 Layer{Eigen::MatrixXd::Zero(1, 3), {}});
}

// x = -4, y = -4, x + y = 3, x - y = 1: general position, all six crossings
// inside [-10, 10]^2 and no cell small enough for Monte Carlo to miss.
const std::vector<std::array<double, 3>> kLines = {
    {1.0, 0.0, 4.0}, {0.0, 1.0, 4.0}, {1.0, 1.0, -3.0}, {1.0, -1.0, -1.0}};

ReluNet arrangement_net() {
  Eigen::MatrixXd W(4, 2);
  Eigen::VectorXd b(4);
  for (int i = 0; i < 4; ++i) {
    W(i, 0) = kLines[static_cast<std::size_t>(i)][0];
    W(i, 1) = kLines[static_cast<std::size_t>(i)][1];
    b[i] = kLines[static_cast<std::size_t>(i)][2];
  }
  return ReluNet(2, {Layer{W, b}}, Layer{Eigen::MatrixXd::Ones(1, 4), {}});
}

std::vector<std::pair<double, double>> interval_maps(const std::vector<RegionRecord>& records) {
  std::vector<std::pair<double, double>> out;
  for (const auto& r : records) out.emplace_back(r.map.u(0, 0), r.map.c[0]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("sample_identify examples") {
  const ReluNet net = testing_support::example_net();
  const Polyhedron box = Polyhedron::box(scalar(0), scalar(3));
  const auto records = sample_identify(net, box, 10000, 42);
  CHECK(records.size() == 3);
  const auto maps = interval_maps(records);
  // Values from the finite-difference oracle over the stated weights.
  const auto segs = oracle::grid_pwa(oracle::example_net, 0, 3);
  REQUIRE(segs.size() == 3);
  std::vector<std::pair<double, double>> expected;
  for (const auto& s : segs) expected.emplace_back(s.slope, s.intercept);
  std::sort(expected.begin(), expected.end());
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(maps[i].first == doctest::Approx(expected[i].first).epsilon(1e-6));
    CHECK(maps[i].second == doctest::Approx(expected[i].second).epsilon(1e-6));
  }
  CHECK(maps[0].first == doctest::Approx(0.0));
  CHECK(maps[1] == std::pair<double, double>{0.75, -3.5});
  CHECK(maps[2] == std::pair<double, double>{2.75, -5.5});
  for (const auto& r : records) {
    CHECK(!r.region);
    CHECK(activation_pattern(net, r.witness) == r.pattern);
  }

  const auto z = sample_identify(zero_net(2), testing_support::cube(2, -1, 1), 500, 1);
  REQUIRE(z.size() == 1);
  CHECK(z[0].map.u.isZero(0));

  const auto id = interval_maps(sample_identify(relu_identity(), Polyhedron::box(scalar(-1), scalar(1)), 1000, 7));
  CHECK(id == std::vector<std::pair<double, double>>{{0, 0}, {1, 0}});
}

TEST_CASE("sample_identify is deterministic and validates its box") {
  const ReluNet net = testing_support::example_net();
  const Polyhedron box = Polyhedron::box(scalar(0), scalar(3));
  const auto a = sample_identify(net, box, 2000, 9), b = sample_identify(net, box, 2000, 9);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].witness == b[i].witness);
  const Polyhedron tri = testing_support::cube(2, 0, 1).with_constraint(vec({1, 1}), 1.0);
  CHECK_THROWS_AS(sample_identify(zero_net(2), tri, 10, 1), UsageError);
}

TEST_CASE("enumerate_exact on the stated example net") {
  const ReluNet net = testing_support::example_net();
  const auto records = enumerate_exact(net, Polyhedron::box(scalar(0), scalar(3)));
  REQUIRE(count_regions(records) == 3);
  std::vector<double> ends;
  for (const auto& r : records) {
    const auto iv = r.region->as_box();
    REQUIRE(iv);
    ends.push_back(iv->first[0]);
    ends.push_back(iv->second[0]);
    CHECK(activation_pattern(net, r.witness) == r.pattern);
  }
  std::sort(ends.begin(), ends.end());
  const std::vector<double> want{0, 1, 1, 2, 2, 3};
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(ends[i] == doctest::Approx(want[i]).epsilon(1e-12));

  const PwaFunction f = to_pwa(records, Polyhedron::box(scalar(0), scalar(3)));
  CHECK(f.pieces().size() == 3);
  CHECK(eval_pwa(f, scalar(0.0))[0] == doctest::Approx(-3.5));
  for (int k = 0; k <= 300; ++k) {
    const double x = k / 100.0;
    CHECK(eval_pwa(f, scalar(x))[0] == doctest::Approx(oracle::example_net(x)).epsilon(1e-12));
  }
}

TEST_CASE("enumerate_exact on a planar arrangement and the zero net") {
  const Polyhedron box = testing_support::cube(2, -10, 10);
  const auto records = enumerate_exact(arrangement_net(), box);
  CHECK(count_regions(records) == 11);
  CHECK(oracle::monte_carlo_cells(kLines, 10, 200000, 5) == 11);

  const auto z = enumerate_exact(zero_net(2), box);
  REQUIRE(z.size() == 1);
  CHECK(z[0].region->without_redundant().num_constraints() == 4);
  const PwaFunction zf = to_pwa(z, box);
  CHECK(eval_pwa(zf, vec({3, -4}))[0] == 0.0);
}

TEST_CASE("to_pwa needs regions; the cap is enforced") {
  const ReluNet net = testing_support::example_net();
  const Polyhedron box = Polyhedron::box(scalar(0), scalar(3));
  const auto sampled = sample_identify(net, box, 100, 1);
  CHECK_THROWS_AS(to_pwa(sampled, box), UsageError);

  auto attached = sampled;
  attach_regions(attached, net, box);
  const PwaFunction f = to_pwa(attached, box);
  CHECK(eval_pwa(f, scalar(2.5))[0] == doctest::Approx(oracle::example_net(2.5)));

  EnumerationOptions opt;
  opt.region_cap = 2;
  CHECK_THROWS_AS(enumerate_exact(net, box, opt), RegionCapExceeded);
}

TEST_CASE("unit_pwa examples") {
  const ReluNet net = testing_support::example_net();
  const Polyhedron box = Polyhedron::box(scalar(0), scalar(3));
  const Pwa1d h11 = pwa1d_from_pwa(unit_pwa(net, 1, 1, box));
  REQUIRE(h11.breakpoints.size() == 1);
  CHECK(h11.breakpoints[0] == doctest::Approx(2.0));
  CHECK(h11.slopes == std::vector<double>{-1.5, 0});
  CHECK(h11(0) == doctest::Approx(3.0));

  const Pwa1d h12 = pwa1d_from_pwa(unit_pwa(net, 1, 2, box));
  REQUIRE(h12.breakpoints.size() == 1);
  CHECK(h12.breakpoints[0] == doctest::Approx(1.0));
  CHECK(h12.slopes == std::vector<double>{0, 2});
  CHECK(h12(3) == doctest::Approx(4.0));

  // Second layer unit agrees with the hand forward pass.
  const PwaFunction h21 = unit_pwa(net, 2, 1, box);
  for (double x : {0.0, 0.9, 1.5, 2.2, 3.0}) {
    const double a = std::max(-1.5 * x + 3, 0.0), b = std::max(2 * x - 2, 0.0);
    CHECK(eval_pwa(h21, scalar(x))[0] == doctest::Approx(std::max(-a - b + 1, 0.0)));
  }

  const PwaFunction z = unit_pwa(zero_net(1), 1, 2, box);
  CHECK(z.pieces().size() == 1);
  CHECK(eval_pwa(z, scalar(1))[0] == 0.0);
  CHECK_THROWS_AS(unit_pwa(net, 3, 1, box), UsageError);
  CHECK_THROWS_AS(unit_pwa(net, 1, 0, box), UsageError);
}

TEST_CASE("property: sample/exact agreement, pointwise exactness, continuity, bound sandwich") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 3), depth(1, 3), width(1, 5);
  for (int t = 0; t < 12; ++t) {
    const int n0 = dim(rng), L = depth(rng);
    std::vector<int> widths;
    for (int l = 0; l < L; ++l) widths.push_back(width(rng));
    const ReluNet net = testing_support::gaussian_net(n0, widths, rng);
    const Polyhedron box = testing_support::cube(n0, -10, 10);
    const auto exact = enumerate_exact(net, box);
    const auto sampled = sample_identify(net, box, 100000, static_cast<std::uint64_t>(t));

    std::set<ActivationPattern> exact_patterns;
    for (const auto& r : exact) exact_patterns.insert(r.pattern);
    for (const auto& r : sampled) CHECK(exact_patterns.count(r.pattern) == 1);
    std::set<ActivationPattern> seen;
    for (const auto& r : sampled) seen.insert(r.pattern);
    for (const auto& r : exact)
      if (r.region->chebyshev()->radius >= 0.01 * 20.0) CHECK(seen.count(r.pattern) == 1);

    const PwaFunction f = to_pwa(exact, box);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int k = 0; k < 1000; ++k) {
      Eigen::VectorXd x(n0);
      for (int j = 0; j < n0; ++j) x[j] = u(rng);
      const double y = eval_net(net, x)[0];
      CHECK(std::abs(eval_pwa(f, x)[0] - y) <= 1e-9 * (1 + std::abs(y)));
    }
    CHECK(check_continuity(f, 100).pass);

    Architecture arch{n0, widths};
    CHECK(BigInt(exact.size()) <= naive_bound(arch));
    if (arch.meets_width_hypothesis()) CHECK(BigInt(exact.size()) <= upper_bound(arch));
  }
}

TEST_CASE("property: single-layer general-position nets hit the arrangement count") {
  std::mt19937_64 rng(8);
  int hits = 0;
  for (int t = 0; t < 20; ++t) {
    const ReluNet net = testing_support::gaussian_net(2, {4}, rng, 0.5);
    if (enumerate_exact(net, testing_support::cube(2, -10, 10)).size() == 11) ++hits;
  }
  CHECK(hits >= 18);
}
