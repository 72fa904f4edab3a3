#include <doctest.h>

#include <cmath>
#include <random>

#include "vincount/expsum.hpp"

using namespace vincount;

namespace {
constexpr double kTight = 1e-12;
}

TEST_CASE("expsum: torus points canonicalize to [0,1)") {
  const TorusPoint p(std::vector<double>{1.25, -0.25, 3.0});
  CHECK(p[1] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p[2] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(p[3] == doctest::Approx(0.0));
  CHECK_THROWS_AS(TorusPoint(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(TorusPoint(std::vector<double>{std::nan("")}), std::invalid_argument);
}

TEST_CASE("expsum: eval_f worked values") {
  // alpha = 1/2, k=1, X=1: e(-1/2) + 1 + e(1/2) = -1.
  const auto v = eval_f(TorusPoint({0.5}), 1, 1);
  CHECK(v.real() == doctest::Approx(-1.0).epsilon(kTight));
  CHECK(v.imag() == doctest::Approx(0.0).epsilon(kTight));
  // alpha = 0 gives the interval length
  const auto w = eval_f(TorusPoint({0.0, 0.0}), 7, 2);
  CHECK(w.real() == doctest::Approx(15.0).epsilon(kTight));
  CHECK(w.imag() == doctest::Approx(0.0).epsilon(kTight));
  CHECK_THROWS_AS(eval_f(TorusPoint({0.5}), 1, 2), std::invalid_argument);
}

TEST_CASE("expsum: eval_g worked value") {
  // k=2, a=(1,0): p=(1, 2h); alpha=(0, 1/2): sum over h of e(h) = 3.
  const ShiftPolynomialFamily f{RhsVector({1, 0})};
  const auto v = eval_g(TorusPoint({0.0, 0.5}), 1, f);
  CHECK(v.real() == doctest::Approx(3.0).epsilon(kTight));
  CHECK(v.imag() == doctest::Approx(0.0).epsilon(kTight));
}

TEST_CASE("expsum: conjugate symmetry under negation") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 3);
    std::vector<double> c(static_cast<std::size_t>(k));
    for (auto& x : c) x = u(rng);
    const TorusPoint alpha(c);
    const auto v = eval_f(alpha, 4, k);
    const auto w = eval_f(alpha.negated(), 4, k);
    CHECK(w.real() == doctest::Approx(v.real()).epsilon(1e-10));
    CHECK(w.imag() == doctest::Approx(-v.imag()).epsilon(1e-10));
  }
}

TEST_CASE("expsum: unit-weight eval_E equals eval_f and indicators restrict it") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Int X = 5;
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 2);
    std::vector<double> c(static_cast<std::size_t>(k));
    for (auto& x : c) x = u(rng);
    const TorusPoint alpha(c);
    const WeightSequence ones(X, std::vector<std::complex<double>>(2 * X + 1, {1.0, 0.0}));
    const auto f = eval_f(alpha, X, k);
    const auto e = eval_E(alpha, ones, k);
    CHECK(std::abs(f - e) < 1e-12);

    // indicator of a subinterval
    std::vector<std::complex<double>> ind(2 * X + 1, {0.0, 0.0});
    for (Int x = -2; x <= 2; ++x) ind[static_cast<std::size_t>(x + X)] = {1.0, 0.0};
    const auto g = eval_E(alpha, WeightSequence(X, ind), k);
    const auto direct = eval_f(alpha, 2, k);
    CHECK(std::abs(g - direct) < 1e-12);
  }
}

TEST_CASE("expsum: frac_mul is exact against the dyadic value of alpha") {
  // The double alpha is exactly m * 2^(e-53) for a 53-bit integer m; the
  // reference fractional part is computed on that dyadic rational exactly.
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const double alpha = trial == 0 ? 0.0 : u(rng);
    Int p = static_cast<Int>(rng() >> (1 + trial % 40));
    if (trial % 2) p = -p;
    const double got = frac_mul(alpha, p);
    int e = 0;
    const double m = std::frexp(alpha, &e);
    const auto mi = static_cast<Int>(std::ldexp(m, 53));
    const int shift = 53 - e;  // alpha = mi / 2^shift, shift >= 53 for alpha < 1
    const Count two_s = Count(1) << shift;
    Count num = Count(mi) * p;
    num = ((num % two_s) + two_s) % two_s;
    const double ref = Rational(num, two_s).convert_to<double>();
    const double diff = std::abs(got - ref);
    CHECK(std::min(diff, 1.0 - diff) <= 1e-13);
  }
}

TEST_CASE("expsum: grid moduli exceed every phase integer") {
  const SystemShape shape(2, 2, 3);
  const auto gj = dft_grid_for_J(shape, RhsVector({1, 2}));
  REQUIRE(gj.moduli.size() == 2);
  CHECK(gj.moduli[0] > 2 * 2 * 3 + 1);
  CHECK(gj.moduli[1] > 2 * 2 * 9 + 2);
  CHECK(gj.points() == Count(gj.moduli[0]) * gj.moduli[1]);

  const auto gh = dft_grid_for_H(shape, RhsVector({1, 2}));
  // peak |p_2(h)| over |h|<=3: p_2 = 2h + 2, peak 8; modulus 4*2*36 + 8 + 1
  CHECK(gh.moduli[1] == 4 * 2 * 36 + 8 + 1);
}

TEST_CASE("expsum: dft worked example J s=1,k=1,X=1,a=0") {
  const auto rep = verify_J_via_dft(SystemShape(1, 1, 1), RhsVector({0}));
  CHECK(rep.grid.moduli == std::vector<Int>{5});
  CHECK(rep.exact == 3);
  CHECK(rep.quadrature == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(rep.pass);
}

TEST_CASE("expsum: dft worked example J s=1,k=2,X=2,a=(1,3)") {
  const auto rep = verify_J_via_dft(SystemShape(1, 2, 2), RhsVector({1, 3}));
  CHECK(rep.exact == 1);
  CHECK(rep.abs_error <= 1e-6);
  CHECK(rep.pass);
}

TEST_CASE("expsum: dft worked example H s=1,k=2,X=1,a=(1,0) counts zero") {
  const auto rep = verify_H_via_dft(SystemShape(1, 2, 1), RhsVector({1, 0}));
  CHECK(rep.exact == 0);
  CHECK(std::abs(rep.quadrature) <= 1e-6);
  CHECK(rep.pass);
}

TEST_CASE("expsum: dft route is worker-count independent bit for bit") {
  const SystemShape shape(1, 2, 2);
  const RhsVector a({1, 3});
  const auto r1 = verify_J_via_dft(shape, a, kDefaultBudget, 1);
  const auto r3 = verify_J_via_dft(shape, a, kDefaultBudget, 3);
  CHECK(r1.quadrature == r3.quadrature);
  const auto h1 = verify_H_via_dft(SystemShape(1, 1, 2), RhsVector({1}), kDefaultBudget, 1);
  const auto h4 = verify_H_via_dft(SystemShape(1, 1, 2), RhsVector({1}), kDefaultBudget, 4);
  CHECK(h1.quadrature == h4.quadrature);
}

TEST_CASE("expsum: parseval at s=1 via the quadrature identity") {
  // (1/N) sum |f|^2 over an exact grid equals the diagonal count 2X+1.
  for (Int X = 1; X <= 3; ++X) {
    const auto rep = verify_J_via_dft(SystemShape(1, 2, X), RhsVector::zero(2));
    CHECK(rep.exact == 2 * X + 1);
    CHECK(rep.pass);
  }
}

TEST_CASE("expsum: grid sweep agrees with direct per-point evaluation") {
  // Small grid: recompute the quadrature with eval_f/eval_g directly.
  const SystemShape shape(1, 1, 2);
  const RhsVector a({1});
  const auto rep = verify_H_via_dft(shape, a);
  const auto& M = rep.grid.moduli;
  const ShiftPolynomialFamily fam{a};
  double acc = 0;
  for (Int m = 0; m < M[0]; ++m) {
    const double alpha = static_cast<double>(m) / static_cast<double>(M[0]);
    const auto f = eval_f(TorusPoint({alpha}), 2 * shape.X(), 1);
    const auto g = eval_g(TorusPoint({-alpha}), shape.X(), fam);
    acc += std::norm(f) * g.real();
  }
  acc /= static_cast<double>(M[0]);
  CHECK(rep.quadrature == doctest::Approx(acc).epsilon(1e-10));
}

TEST_CASE("expsum: budget refusal on oversized grids") {
  CHECK_THROWS_AS(verify_J_via_dft(SystemShape(3, 3, 50), RhsVector::zero(3), 1000000),
                  BudgetExceeded);
}
