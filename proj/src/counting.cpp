#include "vincount/counting.hpp"

#include <chrono>
#include <functional>

#include "vincount/parallel.hpp"

namespace vincount {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Componentwise key bound of r_t over D: |v_j| <= t * max(|min D|, |max D|)^j.
std::vector<Count> key_bounds(const IntSet& domain, int k, int t) {
  Count m(domain.min() < 0 ? -domain.min() : domain.min());
  Count m2(domain.max() < 0 ? -domain.max() : domain.max());
  if (m2 > m) m = m2;
  std::vector<Count> b(static_cast<std::size_t>(k));
  Count pw(1);
  for (int j = 0; j < k; ++j) {
    pw *= m;
    b[static_cast<std::size_t>(j)] = t * pw;
  }
  return b;
}

// Correlation offsets beyond twice the key bound cannot hit any key pair.
bool offset_in_range(std::span<const Count> offset, const std::vector<Count>& bounds) {
  for (std::size_t i = 0; i < offset.size(); ++i)
    if (abs(offset[i]) > 2 * bounds[i]) return false;
  return true;
}

std::vector<Count> widen(std::span<const Int> a) {
  return std::vector<Count>(a.begin(), a.end());
}

// Work estimate mirroring the balanced-split construction plus one
// correlation pass, using multiset bounds on table sizes.
Count build_and_correlate_cost(std::uint64_t n, int t) {
  std::function<Count(int)> build_cost = [&](int u) -> Count {
    if (u <= 1) return Count(n);
    const int lo = u / 2;
    const int hi = u - lo;
    Count c = build_cost(lo);
    if (u % 2 != 0) c += table_size_bound(n, lo) * n;
    c += table_size_bound(n, hi) * table_size_bound(n, lo);
    return c;
  };
  return build_cost(t) + table_size_bound(n, t);
}

void ensure_table_budget(const IntSet& domain, int s, std::uint64_t budget,
                         std::uint64_t correlations = 1) {
  Count cost = build_and_correlate_cost(domain.size(), s);
  cost += Count(correlations - 1) * table_size_bound(domain.size(), s);
  if (cost > budget)
    throw BudgetExceeded("table construction estimate " + cost.str() + " exceeds budget " +
                         std::to_string(budget));
}

Count correlation_sum_over_shifts(const RepTable<Count>& T, const ShiftPolynomialFamily& fam,
                                  const IntSet& shifts, const std::vector<Count>& bounds,
                                  int workers) {
  const auto elems = shifts.elements();
  auto partials = run_chunked<Count>(
      elems.size(), 4, workers, [&](std::uint64_t b, std::uint64_t e, std::uint64_t) {
        Count acc(0);
        for (std::uint64_t i = b; i < e; ++i) {
          std::vector<Count> p = evaluate_family_exact(fam, elems[i]);
          if (!offset_in_range(p, bounds)) continue;
          PowerSumVector offset(p.size());
          for (std::size_t j = 0; j < p.size(); ++j) offset[j] = checked_narrow(p[j]);
          acc += correlate_self(T, offset);
        }
        return acc;
      });
  Count total(0);
  for (const Count& c : partials) total += c;
  return total;
}

}  // namespace

Count table_size_bound(std::uint64_t n, int t) {
  // C(n + t - 1, t) by the multiplicative recurrence; exact at every step.
  Count c(1);
  for (int i = 1; i <= t; ++i) {
    c *= Count(n) - 1 + i;
    c /= i;
  }
  return c;
}

CountResult count_J(const SystemShape& shape, const RhsVector& a, std::uint64_t budget) {
  const auto t0 = Clock::now();
  if (a.k() != shape.k()) throw std::invalid_argument("count_J: right-hand side degree mismatch");
  const IntSet dom = IntSet::interval(-shape.X(), shape.X());
  const auto bounds = key_bounds(dom, shape.k(), shape.s());
  if (!offset_in_range(widen(a.components()), bounds))
    return {Count(0), "convolution", ms_since(t0)};
  ensure_table_budget(dom, shape.s(), budget);
  const auto T = build_table<Count>(dom, shape.k(), shape.s());
  Count v = correlate_self(T, a.components());
  return {std::move(v), "convolution", ms_since(t0)};
}

CountResult count_H(const SystemShape& shape, const RhsVector& a, std::uint64_t budget,
                    int workers) {
  const auto t0 = Clock::now();
  if (a.k() != shape.k()) throw std::invalid_argument("count_H: right-hand side degree mismatch");
  const IntSet dom = IntSet::interval(-2 * shape.X(), 2 * shape.X());
  const IntSet shifts = IntSet::interval(-shape.X(), shape.X());
  ensure_table_budget(dom, shape.s(), budget, shifts.size());
  const auto T = build_table<Count>(dom, shape.k(), shape.s());
  const auto bounds = key_bounds(dom, shape.k(), shape.s());
  const ShiftPolynomialFamily fam{a};
  Count v = correlation_sum_over_shifts(T, fam, shifts, bounds, workers);
  return {std::move(v), "convolution", ms_since(t0)};
}

CountResult count_J_restricted(const IntSet& x_set, int s, int k, const RhsVector& a,
                               std::uint64_t budget) {
  const auto t0 = Clock::now();
  if (x_set.empty()) throw std::invalid_argument("count_J_restricted: empty variable set");
  if (s < 1) throw std::invalid_argument("count_J_restricted: s must be at least 1");
  if (a.k() != k) throw std::invalid_argument("count_J_restricted: degree mismatch");
  const auto bounds = key_bounds(x_set, k, s);
  if (!offset_in_range(widen(a.components()), bounds))
    return {Count(0), "convolution", ms_since(t0)};
  ensure_table_budget(x_set, s, budget);
  const auto T = build_table<Count>(x_set, k, s);
  Count v = correlate_self(T, a.components());
  return {std::move(v), "convolution", ms_since(t0)};
}

CountResult count_H_restricted(const IntSet& x_set, const IntSet& h_set, int s, int k,
                               const RhsVector& a, std::uint64_t budget, int workers) {
  const auto t0 = Clock::now();
  if (x_set.empty() || h_set.empty())
    throw std::invalid_argument("count_H_restricted: empty variable or shift set");
  if (s < 1) throw std::invalid_argument("count_H_restricted: s must be at least 1");
  if (a.k() != k) throw std::invalid_argument("count_H_restricted: degree mismatch");
  const IntSet dom = sumset(x_set, h_set, budget);
  ensure_table_budget(dom, s, budget, h_set.size());
  const auto T = build_table<Count>(dom, k, s);
  const auto bounds = key_bounds(dom, k, s);
  const ShiftPolynomialFamily fam{a};
  Count v = correlation_sum_over_shifts(T, fam, h_set, bounds, workers);
  return {std::move(v), "convolution", ms_since(t0)};
}

Rational weighted_phi(std::span<const Rational> weights, Int X, int s, int k,
                      std::span<const Int> n) {
  if (X < 1) throw std::invalid_argument("weighted_phi: X must be at least 1");
  if (s < 1) throw std::invalid_argument("weighted_phi: s must be at least 1");
  const IntSet dom = IntSet::interval(-X, X);
  if (weights.size() != dom.size())
    throw std::invalid_argument("weighted_phi: need exactly 2X+1 weights");
  if (n.size() != static_cast<std::size_t>(k))
    throw std::invalid_argument("weighted_phi: offset length must equal k");
  ensure_table_budget(dom, s, kDefaultBudget);
  const auto single = build_single<Rational>(dom, k, weights);
  const auto T = table_power(single, s);
  return correlate_self(T, n);
}

CountResult brute_force_J(const SystemShape& shape, const RhsVector& a, std::uint64_t budget) {
  const auto t0 = Clock::now();
  if (a.k() != shape.k())
    throw std::invalid_argument("brute_force_J: right-hand side degree mismatch");
  const int s = shape.s(), k = shape.k();
  const Int X = shape.X();
  const std::uint64_t n = static_cast<std::uint64_t>(2 * X + 1);
  Count tuples = 1;
  for (int i = 0; i < 2 * s; ++i) tuples *= n;
  if (tuples > budget)
    throw BudgetExceeded("enumeration of " + tuples.str() + " tuples exceeds budget " +
                         std::to_string(budget));

  std::vector<PowerSumVector> pows(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const Int x = static_cast<Int>(i) - X;
    pows[i] = power_sum_vector(std::span<const Int>(&x, 1), k);
  }

  // Depth d fixes one coordinate; the first s carry +, the rest -.
  std::vector<PowerSumVector> partial(static_cast<std::size_t>(2 * s) + 1,
                                      PowerSumVector(static_cast<std::size_t>(k), 0));
  Count hits(0);
  std::function<void(int)> descend = [&](int depth) {
    if (depth == 2 * s) {
      if (std::equal(partial[static_cast<std::size_t>(depth)].begin(),
                     partial[static_cast<std::size_t>(depth)].end(), a.components().begin()))
        ++hits;
      return;
    }
    const int sign = depth < s ? 1 : -1;
    auto& next = partial[static_cast<std::size_t>(depth) + 1];
    const auto& cur = partial[static_cast<std::size_t>(depth)];
    for (std::uint64_t i = 0; i < n; ++i) {
      for (int j = 0; j < k; ++j)
        next[static_cast<std::size_t>(j)] =
            cur[static_cast<std::size_t>(j)] + sign * pows[i][static_cast<std::size_t>(j)];
      descend(depth + 1);
    }
  };
  descend(0);
  return {std::move(hits), "brute-force", ms_since(t0)};
}

LemmaReport verify_lemma(const SystemShape& shape, const RhsVector& a, std::uint64_t budget,
                         int workers) {
  LemmaReport r;
  r.J = count_J(shape, a, budget).value;
  r.H = count_H(shape, a, budget, workers).value;
  r.lower_bound = (2 * Count(shape.X()) + 1) * r.J;
  r.holds = r.H >= r.lower_bound;
  if (r.J > 0) r.ratio = Rational(r.H, r.lower_bound);
  return r;
}

}  // namespace vincount
