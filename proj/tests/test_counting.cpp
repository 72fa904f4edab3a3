#include <doctest.h>

#include <functional>
#include <random>

#include "vincount/counting.hpp"

using namespace vincount;

namespace {

// Test-side enumeration oracle, written against the definition and not
// against any library internals: counts pairs of s-tuples over the given
// set whose power-sum vectors differ by a.
Count oracle_pairs(std::span<const Int> elems, int s, int k, std::span<const Int> a) {
  std::vector<std::vector<Int>> tuples;
  std::vector<Int> cur(static_cast<std::size_t>(s));
  std::function<void(int)> rec = [&](int d) {
    if (d == s) {
      tuples.push_back(cur);
      return;
    }
    for (Int e : elems) {
      cur[static_cast<std::size_t>(d)] = e;
      rec(d + 1);
    }
  };
  rec(0);
  auto psv = [&](const std::vector<Int>& t) {
    std::vector<Int> v(static_cast<std::size_t>(k), 0);
    for (Int x : t) {
      Int pw = 1;
      for (int j = 0; j < k; ++j) {
        pw *= x;
        v[static_cast<std::size_t>(j)] += pw;
      }
    }
    return v;
  };
  Count c(0);
  for (const auto& x : tuples)
    for (const auto& y : tuples) {
      const auto vx = psv(x), vy = psv(y);
      bool ok = true;
      for (int j = 0; j < k && ok; ++j)
        ok = vx[static_cast<std::size_t>(j)] - vy[static_cast<std::size_t>(j)] ==
             a[static_cast<std::size_t>(j)];
      if (ok) ++c;
    }
  return c;
}

std::vector<Int> box_elems(Int X) {
  std::vector<Int> v;
  for (Int x = -X; x <= X; ++x) v.push_back(x);
  return v;
}

}  // namespace

TEST_CASE("counting: count_J worked examples") {
  CHECK(count_J(SystemShape(1, 1, 2), RhsVector({0})).value == 5);
  CHECK(count_J(SystemShape(1, 2, 5), RhsVector({1, 3})).value == 1);  // x=2, y=1
  CHECK(count_J(SystemShape(2, 2, 1), RhsVector::zero(2)).value == 15);
  CHECK(count_J(SystemShape(1, 2, 1), RhsVector({1, 0})).value == 0);
  CHECK(count_J(SystemShape(1, 1, 1), RhsVector({5})).value == 0);  // out of range
  CHECK(count_J(SystemShape(1, 1, 2), RhsVector({0})).method == "convolution");
}

TEST_CASE("counting: brute force worked examples and refusal") {
  CHECK(brute_force_J(SystemShape(1, 1, 2), RhsVector({0})).value == 5);
  CHECK(brute_force_J(SystemShape(2, 2, 1), RhsVector::zero(2)).value == 15);
  CHECK(brute_force_J(SystemShape(1, 1, 1), RhsVector({5})).value == 0);
  CHECK(brute_force_J(SystemShape(1, 1, 2), RhsVector({0})).method == "brute-force");
  CHECK_THROWS_AS(brute_force_J(SystemShape(4, 2, 100), RhsVector::zero(2)), BudgetExceeded);
}

TEST_CASE("counting: convolution route equals enumeration on random instances") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const int s = 1 + static_cast<int>(rng() % 2);
    const int k = 1 + static_cast<int>(rng() % 3);
    const Int X = 1 + static_cast<Int>(rng() % 3);
    std::uniform_int_distribution<Int> d(-2 * s * 9, 2 * s * 9);
    std::vector<Int> a(static_cast<std::size_t>(k));
    for (auto& v : a) v = d(rng) % (2 * s * X);  // mostly in range
    const SystemShape shape(s, k, X);
    const RhsVector rhs(a);
    const Count expect = oracle_pairs(box_elems(X), s, k, a);
    CHECK(count_J(shape, rhs).value == expect);
    CHECK(brute_force_J(shape, rhs).value == expect);
  }
}

TEST_CASE("counting: count_H worked examples") {
  // s=1, k=1, X=1, a=(1): 4 solution pairs in [-2,2] per admissible shift.
  CHECK(count_H(SystemShape(1, 1, 1), RhsVector({1})).value == 12);
  // s=1, k=2, X=1, a=(1,0): z-w=1 makes z+w odd, z^2-w^2=2h makes it even.
  CHECK(count_H(SystemShape(1, 2, 1), RhsVector({1, 0})).value == 0);
}

TEST_CASE("counting: count_H equals its definition on small instances") {
  // H = sum over h of pair counts over [-2X,2X] with targets p(h).
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 12; ++trial) {
    const int s = 1 + static_cast<int>(rng() % 2);
    const int k = 1 + static_cast<int>(rng() % 2);
    const Int X = 1 + static_cast<Int>(rng() % 2);
    std::uniform_int_distribution<Int> d(-3, 3);
    std::vector<Int> a(static_cast<std::size_t>(k));
    for (auto& v : a) v = d(rng);
    const ShiftPolynomialFamily fam{RhsVector(a)};
    Count expect(0);
    for (Int h = -X; h <= X; ++h)
      expect += oracle_pairs(box_elems(2 * X), s, k, evaluate_family(fam, h));
    CHECK(count_H(SystemShape(s, k, X), RhsVector(a)).value == expect);
  }
}

TEST_CASE("counting: count_H is worker-count independent") {
  const SystemShape shape(2, 2, 3);
  const RhsVector a({2, 0});
  const Count one = count_H(shape, a, kDefaultBudget, 1).value;
  CHECK(count_H(shape, a, kDefaultBudget, 2).value == one);
  CHECK(count_H(shape, a, kDefaultBudget, 7).value == one);
}

TEST_CASE("counting: restricted variants") {
  const IntSet x01(std::vector<Int>{0, 1});
  CHECK(count_J_restricted(x01, 1, 1, RhsVector({1})).value == 1);  // x=1, y=0
  CHECK(count_J_restricted(IntSet(std::vector<Int>{0}), 2, 2, RhsVector::zero(2)).value == 1);
  CHECK(count_H_restricted(x01, x01, 1, 1, RhsVector({1})).value == 4);
  CHECK_THROWS_AS(count_J_restricted(IntSet(), 1, 1, RhsVector({0})), std::invalid_argument);

  // random sets against the oracle
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<Int> d(-5, 5);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Int> xs(1 + rng() % 5);
    for (auto& v : xs) v = d(rng);
    const IntSet xset(xs);
    const int s = 1 + static_cast<int>(rng() % 2);
    const int k = 1 + static_cast<int>(rng() % 2);
    std::vector<Int> a(static_cast<std::size_t>(k));
    for (auto& v : a) v = d(rng);
    CHECK(count_J_restricted(xset, s, k, RhsVector(a)).value ==
          oracle_pairs(xset.elements(), s, k, a));
  }
}

TEST_CASE("counting: restricted H dominates shift-count times restricted J") {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<Int> d(-4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Int> xs(1 + rng() % 4), hs(1 + rng() % 3);
    for (auto& v : xs) v = d(rng);
    for (auto& v : hs) v = d(rng);
    const IntSet xset(xs), hset(hs);
    std::vector<Int> a{static_cast<Int>(d(rng)), static_cast<Int>(d(rng))};
    const Count J = count_J_restricted(xset, 2, 2, RhsVector(a)).value;
    const Count H = count_H_restricted(xset, hset, 2, 2, RhsVector(a)).value;
    CHECK(H >= Count(hset.size()) * J);
  }
}

TEST_CASE("counting: correlation table matches pointwise correlation") {
  const auto T = build_table<Count>(IntSet::interval(-2, 2), 2, 2);
  const auto corr = correlation_table(T);
  Count diag(0);
  for (const auto& [v, c] : T.entries()) diag += c * c;
  CHECK(corr.at(PowerSumVector{0, 0}) == diag);
  for (const auto& [off, expect] : corr) CHECK(correlate_self(T, off) == expect);
  // total correlation mass is the square of the table mass
  Count total(0);
  for (const auto& [off, c] : corr) total += c;
  CHECK(total == T.total_mass() * T.total_mass());
}

TEST_CASE("counting: homogeneous count dominates every inhomogeneous count") {
  const SystemShape shape(2, 2, 3);
  const Count J0 = count_J(shape, RhsVector::zero(2)).value;
  const auto T = build_table<Count>(IntSet::interval(-3, 3), 2, 2);
  for (const auto& [off, c] : correlation_table(T)) {
    CHECK(c <= J0);
    CHECK(c == count_J(shape, RhsVector(off)).value);
  }
}

TEST_CASE("counting: verify_lemma worked example and exhaustive inequality") {
  const auto rep = verify_lemma(SystemShape(1, 1, 1), RhsVector({1}));
  CHECK(rep.J == 2);
  CHECK(rep.H == 12);
  CHECK(rep.lower_bound == 6);
  CHECK(rep.holds);
  REQUIRE(rep.ratio.has_value());
  CHECK(*rep.ratio == Rational(2));

  const auto zero = verify_lemma(SystemShape(1, 2, 1), RhsVector({1, 0}));
  CHECK(zero.J == 0);
  CHECK(zero.H == 0);
  CHECK(zero.holds);
  CHECK(!zero.ratio.has_value());
}

TEST_CASE("counting: homogeneous H is shift-count times the doubled-box J") {
  for (Int X = 1; X <= 3; ++X) {
    const SystemShape shape(2, 2, X);
    const Count H = count_H(shape, RhsVector::zero(2)).value;
    const Count J2 = count_J(SystemShape(2, 2, 2 * X), RhsVector::zero(2)).value;
    CHECK(H == (2 * Count(X) + 1) * J2);
  }
}

TEST_CASE("counting: weighted phi with unit weights reproduces counts") {
  const Int X = 2;
  const std::vector<Rational> ones(static_cast<std::size_t>(2 * X + 1), Rational(1));
  const SystemShape shape(2, 2, X);
  const auto T = build_table<Count>(IntSet::interval(-X, X), 2, 2);
  for (const auto& [off, c] : correlation_table(T))
    CHECK(weighted_phi(ones, X, 2, 2, off) == Rational(c));
  CHECK(weighted_phi(ones, X, 2, 2, std::vector<Int>{99, 99}) == 0);
}

TEST_CASE("counting: weighted phi peaks at zero offset") {
  std::mt19937_64 rng(59);
  const Int X = 2;
  const int s = 2, k = 2;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Rational> w;
    for (Int i = 0; i < 2 * X + 1; ++i)
      w.push_back(Rational(static_cast<long long>(rng() % 9), 1 + static_cast<long long>(rng() % 7)));
    std::vector<Int> n{static_cast<Int>(rng() % 13) - 6, static_cast<Int>(rng() % 21) - 10};
    const Rational phi0 = weighted_phi(w, X, s, k, std::vector<Int>{0, 0});
    CHECK(weighted_phi(w, X, s, k, n) <= phi0);
  }
}

TEST_CASE("counting: budget refusals carry the estimate") {
  CHECK_THROWS_AS(count_J(SystemShape(3, 3, 2000), RhsVector::zero(3), 1000), BudgetExceeded);
  CHECK_THROWS_AS(count_H(SystemShape(2, 2, 5000), RhsVector::zero(2), 1000), BudgetExceeded);
}

TEST_CASE("counting: degree mismatches are rejected") {
  CHECK_THROWS_AS(count_J(SystemShape(1, 2, 1), RhsVector({1})), std::invalid_argument);
  CHECK_THROWS_AS(count_H(SystemShape(1, 1, 1), RhsVector({1, 0})), std::invalid_argument);
  CHECK_THROWS_AS(weighted_phi(std::vector<Rational>{Rational(1)}, 1, 1, 1, std::vector<Int>{0}),
                  std::invalid_argument);
}
