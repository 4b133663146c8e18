#include "doctest.h"

#include "oracles.hpp"
#include "relupwa/bounds.hpp"
#include "relupwa/errors.hpp"

using namespace relupwa;

namespace {
Architecture arch(int n0, std::vector<int> w) { return {n0, std::move(w)}; }
}  // namespace

TEST_CASE("lower_bound examples") {
  CHECK(lower_bound(arch(2, {7, 7})) == 261);
  CHECK(lower_bound(arch(1, {4})) == 5);
  CHECK(lower_bound(arch(1, {1})) == 2);
}

TEST_CASE("upper_bound examples") {
  CHECK(upper_bound(arch(2, {4})) == 11);
  CHECK(upper_bound(arch(1, {1})) == 2);
  CHECK(upper_bound(arch(1, {2, 2})) == 9);
  CHECK(upper_bound(arch(2, {7, 7})) == 841);
}

TEST_CASE("naive_bound examples") {
  CHECK(naive_bound(arch(1, {4})) == 16);
  CHECK(naive_bound(arch(2, {7, 7})) == 16384);
  CHECK(naive_bound(arch(1, {1})) == 2);
}

TEST_CASE("hypothesis violations are errors") {
  CHECK_THROWS_AS(lower_bound(arch(3, {2})), HypothesisError);
  CHECK_THROWS_AS(upper_bound(arch(2, {4, 1})), HypothesisError);
  CHECK(naive_bound(arch(3, {2})) == 4);
}

TEST_CASE("big values stay exact") {
  // 2^200 overflows every machine integer.
  CHECK(naive_bound(arch(1, std::vector<int>(20, 10))) == BigInt(1) << 200);
  CHECK(binomial(100, 50) == BigInt("100891344545564193334812497256"));
  CHECK(binomial(5, 7) == 0);
}

TEST_CASE("Architecture parsing") {
  const Architecture a = Architecture::parse("2:7,7");
  CHECK(a.input_dim == 2);
  CHECK(a.widths == std::vector<int>{7, 7});
  CHECK(a.to_string() == "2:7,7");
  CHECK_THROWS_AS(Architecture::parse("2"), UsageError);
  CHECK_THROWS_AS(Architecture::parse("2:"), UsageError);
  CHECK_THROWS_AS(Architecture::parse("0:3"), UsageError);
  CHECK_THROWS_AS(Architecture::parse("2:3,x"), UsageError);
  CHECK_THROWS_AS(Architecture::parse("2:-1"), UsageError);
}

TEST_CASE("property: bounds match the brute-force oracles") {
  for (int n0 = 1; n0 <= 3; ++n0)
    for (int a = n0; a <= 6; ++a)
      for (int b = n0; b <= 6; ++b) {
        const Architecture A = arch(n0, {a, b});
        CHECK(upper_bound(A) == oracle::upper_bound_scan(n0, {a, b}));
        CHECK(lower_bound(A) == oracle::lower_bound_direct(n0, {a, b}));
      }
}

TEST_CASE("property: lower <= upper <= naive, exhaustively") {
  std::size_t checked = 0;
  for (int n0 = 1; n0 <= 3; ++n0)
    for (int L = 1; L <= 3; ++L) {
      std::vector<int> w(static_cast<std::size_t>(L), n0);
      while (true) {
        const Architecture A = arch(n0, w);
        const BigInt lo = lower_bound(A), up = upper_bound(A), nv = naive_bound(A);
        CHECK(lo <= up);
        CHECK(up <= nv);
        ++checked;
        std::size_t pos = 0;
        while (pos < w.size() && ++w[pos] > 8) w[pos++] = n0;
        if (pos == w.size()) break;
      }
    }
  CHECK(checked > 500);
}
