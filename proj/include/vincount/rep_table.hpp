#pragma once
//
// Representation tables: sparse histograms of power-sum vectors.
//
// For a finite domain D and tuple length t, the table maps each vector
//   v = (sum x_i, ..., sum x_i^k)  over tuples x in D^t
// to its multiplicity r_t(v) (or to a weighted mass when each domain
// element carries a weight). Tables over the same domain convolve:
//   r_{t1+t2}(v) = sum_u r_{t1}(u) * r_{t2}(v - u),
// which is what makes meet-in-the-middle construction and correlation
// counting work. All arithmetic is exact.

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vincount/core.hpp"

namespace vincount {

template <class Scalar>
class RepTable {
 public:
  using Map = std::unordered_map<PowerSumVector, Scalar, PsvHash>;

  RepTable(int k, int t, IntSet domain) : k_(k), t_(t), domain_(std::move(domain)) {
    if (k_ < 1) throw std::invalid_argument("RepTable: degree must be at least 1");
    if (t_ < 0) throw std::invalid_argument("RepTable: tuple length must be nonnegative");
    if (domain_.empty()) throw std::invalid_argument("RepTable: empty domain");
  }

  int degree() const { return k_; }
  int tuple_length() const { return t_; }
  const IntSet& domain() const { return domain_; }
  const Map& entries() const { return map_; }
  std::size_t size() const { return map_.size(); }

  // Multiplicity lookup; absent keys count zero.
  Scalar at(const PowerSumVector& v) const {
    auto it = map_.find(v);
    return it == map_.end() ? Scalar(0) : it->second;
  }

  Scalar total_mass() const {
    Scalar m(0);
    for (const auto& [v, c] : map_) m += c;
    return m;
  }

  // Zero contributions are never stored; negative multiplicities are a bug.
  void add(PowerSumVector v, const Scalar& c) {
    if (c == 0) return;
    auto [it, fresh] = map_.try_emplace(std::move(v), c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) map_.erase(it);
    }
  }

  // Entries in lexicographic key order: the canonical serialization order.
  std::vector<std::pair<PowerSumVector, Scalar>> sorted_entries() const {
    std::vector<std::pair<PowerSumVector, Scalar>> out(map_.begin(), map_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  bool operator==(const RepTable& o) const {
    return k_ == o.k_ && t_ == o.t_ && domain_ == o.domain_ && map_ == o.map_;
  }

 private:
  int k_;
  int t_;
  IntSet domain_;
  Map map_;
};

// Table of the empty tuple: a single all-zero key of mass one.
template <class Scalar>
RepTable<Scalar> unit_table(const IntSet& domain, int k) {
  RepTable<Scalar> T(k, 0, domain);
  T.add(PowerSumVector(static_cast<std::size_t>(k), 0), Scalar(1));
  return T;
}

// Length-1 table: one key per distinct domain element. Optional weights are
// per-element masses aligned with the sorted domain order; they must be
// nonnegative, and zeros simply drop the element's contribution.
template <class Scalar>
RepTable<Scalar> build_single(const IntSet& domain, int k,
                              std::span<const Scalar> weights = {}) {
  RepTable<Scalar> T(k, 1, domain);
  if (!weights.empty() && weights.size() != domain.size())
    throw std::invalid_argument("build_single: one weight per domain element required");
  std::size_t i = 0;
  for (Int d : domain.elements()) {
    Scalar w = weights.empty() ? Scalar(1) : weights[i];
    if (w < 0) throw std::invalid_argument("build_single: negative weight");
    T.add(power_sum_vector(std::span<const Int>(&d, 1), k), w);
    ++i;
  }
  return T;
}

// Exact convolution; both factors must describe tuples over the same domain
// and degree. Key arithmetic refuses to wrap rather than alias.
template <class Scalar>
RepTable<Scalar> convolve(const RepTable<Scalar>& a, const RepTable<Scalar>& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("convolve: degree mismatch");
  if (!(a.domain() == b.domain())) throw std::invalid_argument("convolve: domain mismatch");
  RepTable<Scalar> T(a.degree(), a.tuple_length() + b.tuple_length(), a.domain());
  for (const auto& [u, cu] : a.entries())
    for (const auto& [v, cv] : b.entries()) T.add(psv_add(u, v), cu * cv);
  return T;
}

// r_t by repeated balanced splitting: halves of length ceil(t/2) and
// floor(t/2), then a single convolution per level. Exact arithmetic makes
// the result identical to the naive one-element-at-a-time fold.
template <class Scalar>
RepTable<Scalar> table_power(const RepTable<Scalar>& single, int t) {
  if (single.tuple_length() != 1)
    throw std::invalid_argument("table_power: base must have tuple length 1");
  if (t < 0) throw std::invalid_argument("table_power: negative tuple length");
  if (t == 0) return unit_table<Scalar>(single.domain(), single.degree());
  if (t == 1) return single;
  RepTable<Scalar> lo = table_power(single, t / 2);
  RepTable<Scalar> hi = (t % 2 != 0) ? convolve(lo, single) : lo;
  return convolve(hi, lo);
}

template <class Scalar>
RepTable<Scalar> build_table(const IntSet& domain, int k, int t) {
  if (t == 0) return unit_table<Scalar>(domain, k);
  return table_power(build_single<Scalar>(domain, k), t);
}

}  // namespace vincount
