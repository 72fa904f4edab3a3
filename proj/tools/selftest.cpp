#include "selftest.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "vincount/counting.hpp"
#include "vincount/expsum.hpp"
#include "vincount/exponents.hpp"

namespace vincount::cli {

namespace {

using Hist = std::unordered_map<PowerSumVector, Count, PsvHash>;

// Enumeration histogram of power-sum differences over all tuple pairs,
// independent of the table machinery.
Hist brute_histogram(Int X, int s, int k) {
  std::vector<PowerSumVector> sums;
  std::vector<Int> cur(static_cast<std::size_t>(s));
  std::function<void(int)> rec = [&](int d) {
    if (d == s) {
      PowerSumVector v(static_cast<std::size_t>(k), 0);
      for (Int x : cur) {
        Int pw = 1;
        for (int j = 0; j < k; ++j) {
          pw *= x;
          v[static_cast<std::size_t>(j)] += pw;
        }
      }
      sums.push_back(std::move(v));
      return;
    }
    for (Int x = -X; x <= X; ++x) {
      cur[static_cast<std::size_t>(d)] = x;
      rec(d + 1);
    }
  };
  rec(0);
  Hist h;
  for (const auto& u : sums)
    for (const auto& v : sums) ++h[psv_sub(u, v)];
  return h;
}

std::string shape_str(int s, int k, Int X) {
  std::ostringstream os;
  os << "s=" << s << " k=" << k << " X=" << X;
  return os.str();
}

SelfCheck check_oracle_equivalence(bool full) {
  const int top = full ? 3 : 2;
  long long compared = 0;
  for (int s = 1; s <= top; ++s)
    for (int k = 1; k <= top; ++k)
      for (Int X = 1; X <= top; ++X) {
        const auto brute = brute_histogram(X, s, k);
        const auto table = build_table<Count>(IntSet::interval(-X, X), k, s);
        const auto conv = correlation_table(table);
        if (conv.size() != brute.size())
          return {"oracle-equivalence", false,
                  "difference-key mismatch at " + shape_str(s, k, X)};
        for (const auto& [key, cnt] : brute) {
          const auto it = conv.find(key);
          if (it == conv.end() || it->second != cnt)
            return {"oracle-equivalence", false, "count mismatch at " + shape_str(s, k, X)};
          ++compared;
        }
      }
  return {"oracle-equivalence", true,
          std::to_string(compared) + " targets agree with enumeration"};
}

SelfCheck check_shift_identity(bool full) {
  const Int topX = full ? 3 : 2;
  const Int topH = 3;
  long long checked = 0;
  for (int s = 1; s <= 2; ++s)
    for (int k = 1; k <= 3; ++k)
      for (Int X = 1; X <= topX; ++X) {
        std::vector<std::vector<Int>> tuples;
        std::vector<Int> cur(static_cast<std::size_t>(s));
        std::function<void(int)> rec = [&](int d) {
          if (d == s) {
            tuples.push_back(cur);
            return;
          }
          for (Int x = -X; x <= X; ++x) {
            cur[static_cast<std::size_t>(d)] = x;
            rec(d + 1);
          }
        };
        rec(0);
        for (const auto& x : tuples)
          for (const auto& y : tuples) {
            const auto a = psv_sub(power_sum_vector(x, k), power_sum_vector(y, k));
            const ShiftPolynomialFamily fam{RhsVector(a)};
            for (Int h = -topH; h <= topH; ++h) {
              const auto [xs, ys] = shift_solution(x, y, h);
              const auto got = psv_sub(power_sum_vector(xs, k), power_sum_vector(ys, k));
              if (got != evaluate_family(fam, h))
                return {"shift-identity", false, "mismatch at " + shape_str(s, k, X)};
              if (h >= -X && h <= X)
                for (Int z : xs)
                  if (z < -2 * X || z > 2 * X)
                    return {"shift-identity", false, "shifted variable left the doubled box"};
              ++checked;
            }
          }
      }
  return {"shift-identity", true, std::to_string(checked) + " shifted pairs verified"};
}

SelfCheck check_lemma_inequality(bool full) {
  const Int top = full ? 3 : 2;
  long long checked = 0;
  for (int s = 1; s <= 2; ++s)
    for (int k = 1; k <= (full ? 3 : 2); ++k)
      for (Int X = 1; X <= top; ++X) {
        const auto jmap = correlation_table(build_table<Count>(IntSet::interval(-X, X), k, s));
        const auto hmap =
            correlation_table(build_table<Count>(IntSet::interval(-2 * X, 2 * X), k, s));
        for (const auto& [a, J] : jmap) {
          const ShiftPolynomialFamily fam{RhsVector(a)};
          Count H(0);
          for (Int h = -X; h <= X; ++h) {
            const auto it = hmap.find(evaluate_family(fam, h));
            if (it != hmap.end()) H += it->second;
          }
          if (H < (2 * Count(X) + 1) * J)
            return {"lemma-inequality", false,
                    "H < (2X+1) J at " + shape_str(s, k, X)};
          ++checked;
        }
      }
  return {"lemma-inequality", true,
          std::to_string(checked) + " realized targets satisfy the shift inequality"};
}

SelfCheck check_degree_law(bool full, std::mt19937_64& rng) {
  const int draws = full ? 1000 : 200;
  std::uniform_int_distribution<Int> d(-9, 9);
  for (int i = 0; i < draws; ++i) {
    const int k = 1 + static_cast<int>(rng() % 8);
    std::vector<Int> a(static_cast<std::size_t>(k));
    do {
      for (auto& v : a) v = d(rng);
    } while (!first_nonzero_index(a));
    const RhsVector rhs(a);
    const ShiftPolynomialFamily fam{rhs};
    const auto prof = degree_profile(fam);
    const int ell = *rhs.ell();
    for (int j = 1; j <= k; ++j) {
      if (prof[static_cast<std::size_t>(j - 1)] != std::max(0, j - ell))
        return {"degree-law", false, "profile mismatch"};
      if (j > ell && fam.coefficient(j, ell) != binomial(j, ell) * a[static_cast<std::size_t>(ell - 1)])
        return {"degree-law", false, "leading coefficient mismatch"};
    }
  }
  return {"degree-law", true, std::to_string(draws) + " random families obey the degree law"};
}

SelfCheck check_table_invariants(std::mt19937_64& rng) {
  std::uniform_int_distribution<Int> d(-5, 5);
  for (int i = 0; i < 40; ++i) {
    std::vector<Int> xs(1 + rng() % 5);
    for (auto& v : xs) v = d(rng);
    const IntSet dom(xs);
    const int k = 1 + static_cast<int>(rng() % 3);
    const int t = static_cast<int>(rng() % 4);
    const auto T = build_table<Count>(dom, k, t);
    Count mass(1);
    for (int q = 0; q < t; ++q) mass *= dom.size();
    if (T.total_mass() != mass) return {"table-invariants", false, "mass mismatch"};
    const auto single = build_single<Count>(dom, k);
    const int split = t > 0 ? static_cast<int>(rng() % (t + 1)) : 0;
    if (!(convolve(table_power(single, split), table_power(single, t - split)) == T))
      return {"table-invariants", false, "split dependence detected"};
  }
  return {"table-invariants", true, "mass and split independence hold on 40 random tables"};
}

SelfCheck check_dft_routes(int workers) {
  const struct {
    int s, k;
    Int X;
    std::vector<Int> a;
  } cases[] = {
      {1, 1, 1, {0}}, {1, 1, 2, {1}}, {2, 2, 1, {0, 0}}, {1, 2, 2, {1, 3}}, {2, 1, 2, {2}},
  };
  for (const auto& c : cases) {
    const SystemShape shape(c.s, c.k, c.X);
    const RhsVector a(c.a);
    const auto j = verify_J_via_dft(shape, a, kDefaultBudget, workers);
    if (!j.pass) return {"dft-routes", false, "J quadrature drifted at " + shape_str(c.s, c.k, c.X)};
    const auto h = verify_H_via_dft(shape, a, kDefaultBudget, workers);
    if (!h.pass) return {"dft-routes", false, "H quadrature drifted at " + shape_str(c.s, c.k, c.X)};
  }
  return {"dft-routes", true, "quadrature matches exact counts on 5 shapes, both identities"};
}

SelfCheck check_phi_peak(std::mt19937_64& rng) {
  const Int X = 2;
  for (int i = 0; i < 60; ++i) {
    std::vector<Rational> w;
    for (Int q = 0; q < 2 * X + 1; ++q)
      w.push_back(Rational(static_cast<long long>(rng() % 8),
                           1 + static_cast<long long>(rng() % 6)));
    const std::vector<Int> n{static_cast<Int>(rng() % 15) - 7, static_cast<Int>(rng() % 25) - 12};
    const auto phi0 = weighted_phi(w, X, 2, 2, std::vector<Int>{0, 0});
    if (weighted_phi(w, X, 2, 2, n) > phi0)
      return {"phi-peak", false, "weighted correlation exceeded its zero-offset value"};
  }
  return {"phi-peak", true, "zero offset dominates on 60 random weight draws"};
}

}  // namespace

std::vector<SelfCheck> run_selftest(bool full, std::uint64_t seed, int workers) {
  std::mt19937_64 rng(seed);
  std::vector<SelfCheck> out;
  out.push_back(check_oracle_equivalence(full));
  out.push_back(check_shift_identity(full));
  out.push_back(check_lemma_inequality(full));
  out.push_back(check_degree_law(full, rng));
  out.push_back(check_table_invariants(rng));
  out.push_back(check_dft_routes(workers));
  out.push_back(check_phi_peak(rng));
  return out;
}

}  // namespace vincount::cli
