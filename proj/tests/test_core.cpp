#include <doctest.h>

#include <random>

#include "vincount/core.hpp"

using namespace vincount;

TEST_CASE("core: power_sum_vector matches direct computation") {
  const std::vector<Int> x{2, -1, 3};
  const auto v = power_sum_vector(x, 3);
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 4);       // 2 - 1 + 3
  CHECK(v[1] == 14);      // 4 + 1 + 9
  CHECK(v[2] == 34);      // 8 - 1 + 27
  CHECK(power_sum_vector(std::vector<Int>{}, 2) == PowerSumVector{0, 0});
  CHECK_THROWS_AS(power_sum_vector(x, 0), std::invalid_argument);
}

TEST_CASE("core: power sums are additive under concatenation") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Int> d(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Int> x(3), y(2);
    for (auto& v : x) v = d(rng);
    for (auto& v : y) v = d(rng);
    std::vector<Int> xy = x;
    xy.insert(xy.end(), y.begin(), y.end());
    const int k = 1 + static_cast<int>(trial % 5);
    CHECK(power_sum_vector(xy, k) == psv_add(power_sum_vector(x, k), power_sum_vector(y, k)));
  }
}

TEST_CASE("core: checked arithmetic refuses to wrap") {
  CHECK(checked_pow(3, 4) == 81);
  CHECK_THROWS_AS(checked_mul(Int(1) << 62, 4), std::overflow_error);
  CHECK_THROWS_AS(checked_add(std::numeric_limits<Int>::max(), 1), std::overflow_error);
  CHECK_THROWS_AS(checked_pow(10, 25), std::overflow_error);
  CHECK_THROWS_AS(checked_narrow(Count("98765432109876543210987654321")), std::overflow_error);
  CHECK(checked_narrow(Count(-17)) == -17);
}

TEST_CASE("core: first nonzero index and RhsVector leading index") {
  CHECK(first_nonzero_index(std::vector<Int>{0, 0, 5}) == 3);
  CHECK(first_nonzero_index(std::vector<Int>{7}) == 1);
  CHECK(!first_nonzero_index(std::vector<Int>{0, 0}).has_value());

  RhsVector a({0, 3, 0});
  CHECK(a.k() == 3);
  CHECK(a.ell() == 2);
  CHECK(a[2] == 3);
  CHECK(!a.is_zero());
  CHECK(RhsVector::zero(4).is_zero());
  CHECK_THROWS_AS(RhsVector({}), std::invalid_argument);
}

TEST_CASE("core: SystemShape validation and criticality") {
  SystemShape sh(2, 3, 10);
  CHECK(sh.subcritical());                      // 4 < 12
  CHECK(!SystemShape(3, 2, 1).subcritical());   // 6 == 6
  CHECK(!SystemShape(4, 2, 1).subcritical());
  CHECK_THROWS_AS(SystemShape(0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(SystemShape(1, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(SystemShape(1, 1, 0), std::invalid_argument);
}

TEST_CASE("core: IntSet normalizes and answers membership") {
  IntSet s(std::vector<Int>{3, -1, 3, 0, -1});
  CHECK(s.size() == 3);
  CHECK(s.elements()[0] == -1);
  CHECK(s.contains(0));
  CHECK(!s.contains(2));
  CHECK(s.min() == -1);
  CHECK(s.max() == 3);

  const IntSet iv = IntSet::interval(-2, 2);
  CHECK(iv.size() == 5);
  CHECK(IntSet::interval(5, 4).empty());
}

TEST_CASE("core: sumset worked example and properties") {
  const IntSet a(std::vector<Int>{-1, 1});
  const IntSet b(std::vector<Int>{-1, 0, 1});
  CHECK(sumset(a, b) == IntSet::interval(-2, 2));
  CHECK(sumset(a, IntSet()).empty());

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Int> d(-20, 20);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Int> xs(1 + rng() % 6), ys(1 + rng() % 6);
    for (auto& v : xs) v = d(rng);
    for (auto& v : ys) v = d(rng);
    IntSet A(xs), B(ys);
    const IntSet S = sumset(A, B);
    CHECK(S.size() >= std::max(A.size(), B.size()));
    CHECK(S.size() <= A.size() * B.size());
    // every pair sum present, nothing else
    std::vector<Int> all;
    for (Int x : A.elements())
      for (Int y : B.elements()) all.push_back(x + y);
    CHECK(S == IntSet(all));
    CHECK(sumset(B, A) == S);
  }
}

TEST_CASE("core: oversized constructions are refused") {
  CHECK_THROWS_AS(IntSet::interval(0, Int(1) << 40), BudgetExceeded);
}
