#pragma once
//
// Shift calculus for diagonal power-sum systems.
//
// Translating every variable of a solution by h turns a system with
// right-hand side a = (a_1, ..., a_k) into one with right-hand side
//   p_j(h) = sum_{m=1..j} C(j,m) a_m h^{j-m},      j = 1..k,
// because (x+h)^j - (y+h)^j expands binomially and the pure h^j terms
// cancel between the two sides. Writing ell for the first nonzero index
// of a, the degree of p_j in h is max(0, j - ell) with leading
// coefficient C(j, ell) a_ell, and p_j(0) = a_j.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "vincount/core.hpp"

namespace vincount {

// C(n, r) exactly, by the Pascal recurrence.
Count binomial(int n, int r);

// The coefficient table of the polynomials p_1, ..., p_k attached to a
// right-hand side a. Row j holds c_{j,m} = C(j,m) a_m for m = 1..j, i.e.
// the coefficient of h^{j-m} in p_j.
class ShiftPolynomialFamily {
 public:
  explicit ShiftPolynomialFamily(RhsVector a);

  int k() const { return a_.k(); }
  const RhsVector& rhs() const { return a_; }

  // c_{j,m} for 1 <= m <= j <= k.
  const Count& coefficient(int j, int m) const;

  // Degree of p_j in h as realized by the stored coefficients; zero
  // polynomials and constants both report 0.
  int realized_degree(int j) const;

 private:
  RhsVector a_;
  std::vector<std::vector<Count>> rows_;  // rows_[j-1] has j entries, m = 1..j
};

// (p_1(h), ..., p_k(h)) exactly.
std::vector<Count> evaluate_family_exact(const ShiftPolynomialFamily& f, Int h);

// Same, narrowed to 64 bits; throws std::overflow_error when it does not fit.
PowerSumVector evaluate_family(const ShiftPolynomialFamily& f, Int h);

// (max(0, j - ell))_{j=1..k}, cross-checked against the realized degrees of
// the coefficient table. Rejects a = 0, which has no leading index.
std::vector<int> degree_profile(const ShiftPolynomialFamily& f);

// Translates both sides of a solution pair by h.
std::pair<std::vector<Int>, std::vector<Int>> shift_solution(std::span<const Int> x,
                                                             std::span<const Int> y, Int h);

// Outcome of checking the exact shift inequality H >= (2X+1) J, where J
// counts solutions over [-X, X] with right-hand side a and H counts the
// shifted system over [-2X, 2X] with right-hand sides p(h), h in [-X, X].
struct LemmaReport {
  Count J;
  Count H;
  Count lower_bound;               // (2X+1) * J
  std::optional<Rational> ratio;   // H / lower_bound when J > 0
  bool holds;
};

LemmaReport verify_lemma(const SystemShape& shape, const RhsVector& a,
                         std::uint64_t budget = kDefaultBudget, int workers = 1);

}  // namespace vincount
