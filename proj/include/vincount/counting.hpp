#pragma once
//
// Exact solution counting via table correlation.
//
// With r_s the representation table of s-tuples over a domain D, the
// number of pairs (x, y) in D^s x D^s whose power-sum vectors differ by a
// is the correlation
//   sum_v r_s(v) * r_s(v - a).
// The box count J uses D = [-X, X]; the shifted count H sums correlations
// of the [-2X, 2X] table at offsets p(h) over h in [-X, X]. Restricted
// variants replace the boxes by arbitrary finite sets. A brute-force
// enumeration oracle is kept alongside as an independent route.

#include <cstdint>
#include <string>
#include <unordered_map>

#include "vincount/core.hpp"
#include "vincount/rep_table.hpp"
#include "vincount/shift_poly.hpp"

namespace vincount {

struct CountResult {
  Count value;
  std::string method;  // "convolution" or "brute-force"
  double elapsed_ms = 0.0;
};

// sum_v T(v) * T(v - offset); offset length must match the table degree.
template <class Scalar>
Scalar correlate_self(const RepTable<Scalar>& T, std::span<const Int> offset) {
  if (offset.size() != static_cast<std::size_t>(T.degree()))
    throw std::invalid_argument("correlate_self: offset length must equal table degree");
  Scalar acc(0);
  PowerSumVector w(offset.size());
  for (const auto& [v, c] : T.entries()) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = checked_sub(v[i], offset[i]);
    auto it = T.entries().find(w);
    if (it != T.entries().end()) acc += c * it->second;
  }
  return acc;
}

// All correlations at once: difference u - v mapped to sum T(u) T(v).
// Quadratic in the table size; meant for exhaustive small-grid sweeps.
template <class Scalar>
std::unordered_map<PowerSumVector, Scalar, PsvHash> correlation_table(const RepTable<Scalar>& T) {
  std::unordered_map<PowerSumVector, Scalar, PsvHash> out;
  for (const auto& [u, cu] : T.entries())
    for (const auto& [v, cv] : T.entries()) {
      Scalar prod = cu * cv;
      auto [it, fresh] = out.try_emplace(psv_sub(u, v), std::move(prod));
      if (!fresh) it->second += cu * cv;
    }
  return out;
}

// J: solution pairs over [-X, X]^s with power-sum difference a.
CountResult count_J(const SystemShape& shape, const RhsVector& a,
                    std::uint64_t budget = kDefaultBudget);

// H: solution pairs over [-2X, 2X]^s of the shifted systems, summed over
// shifts h in [-X, X].
CountResult count_H(const SystemShape& shape, const RhsVector& a,
                    std::uint64_t budget = kDefaultBudget, int workers = 1);

// Same counts over arbitrary finite sets. The H variant draws variables
// from the sumset X_set + H_set and shifts over H_set.
CountResult count_J_restricted(const IntSet& x_set, int s, int k, const RhsVector& a,
                               std::uint64_t budget = kDefaultBudget);
CountResult count_H_restricted(const IntSet& x_set, const IntSet& h_set, int s, int k,
                               const RhsVector& a, std::uint64_t budget = kDefaultBudget,
                               int workers = 1);

// Weighted self-correlation of the box table at offset n: weights are
// nonnegative rationals indexed by x = -X..X, one per element.
Rational weighted_phi(std::span<const Rational> weights, Int X, int s, int k,
                      std::span<const Int> n);

// Independent oracle: direct enumeration of all (2X+1)^{2s} tuple pairs.
// Refuses when that exceeds the budget.
CountResult brute_force_J(const SystemShape& shape, const RhsVector& a,
                          std::uint64_t budget = kDefaultBudget);

// Upper bound on the sparse table size for t-tuples over n elements:
// multisets, C(n + t - 1, t). Used for budget prechecks.
Count table_size_bound(std::uint64_t n, int t);

}  // namespace vincount
