#pragma once
//
// Shared model types for exact counting in diagonal power-sum systems.
//
// A "power-sum vector" of degree k for a tuple x = (x_1, ..., x_t) is
//   (sum x_i, sum x_i^2, ..., sum x_i^k).
// Counting problems ask how many tuple pairs realize a prescribed
// componentwise difference of power-sum vectors. Everything downstream
// (representation tables, shift polynomials, correlation counts) speaks
// in the types defined here.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace vincount {

using Int = std::int64_t;

// Counts are exact and unbounded; they are never rounded, sampled, or
// approximated anywhere in the library.
using Count = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Thrown when a requested computation would exceed the configured work
// budget. The caller gets a refusal, never a partial or estimated result.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

constexpr std::uint64_t kDefaultBudget = 100'000'000;

// 64-bit arithmetic that refuses to wrap.
inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("64-bit overflow in addition");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("64-bit overflow in subtraction");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("64-bit overflow in multiplication");
  return r;
}

inline Int checked_pow(Int base, int exp) {
  Int r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

// Narrows an exact integer into Int or throws.
Int checked_narrow(const Count& v);

// ---------------------------------------------------------------------------
// Power-sum vectors

using PowerSumVector = std::vector<Int>;

// (sum x_i, sum x_i^2, ..., sum x_i^k); requires k >= 1.
PowerSumVector power_sum_vector(std::span<const Int> x, int k);

PowerSumVector psv_add(const PowerSumVector& a, const PowerSumVector& b);
PowerSumVector psv_sub(const PowerSumVector& a, const PowerSumVector& b);

struct PsvHash {
  std::size_t operator()(const PowerSumVector& v) const noexcept;
};

// ---------------------------------------------------------------------------
// Right-hand sides

// Index of the first nonzero entry, 1-based; empty when all entries vanish.
std::optional<int> first_nonzero_index(std::span<const Int> a);

// Target vector a = (a_1, ..., a_k) for a degree-k system. Remembers the
// leading index ell = min{ j : a_j != 0 } because the shift calculus and the
// exponent predictions are driven by it.
class RhsVector {
 public:
  explicit RhsVector(std::vector<Int> components);
  static RhsVector zero(int k);

  int k() const { return static_cast<int>(c_.size()); }
  Int operator[](int j) const { return c_.at(static_cast<std::size_t>(j) - 1); }  // 1-based
  std::span<const Int> components() const { return c_; }
  std::optional<int> ell() const { return ell_; }
  bool is_zero() const { return !ell_.has_value(); }

  bool operator==(const RhsVector&) const = default;

 private:
  std::vector<Int> c_;
  std::optional<int> ell_;
};

// ---------------------------------------------------------------------------
// System shape

// Parameters (s, k, X): s variables per side, degrees 1..k, box radius X.
class SystemShape {
 public:
  SystemShape(int s, int k, Int X);

  int s() const { return s_; }
  int k() const { return k_; }
  Int X() const { return X_; }

  // 2s < k(k+1), the regime where nontrivial exponent savings exist.
  bool subcritical() const;

  bool operator==(const SystemShape&) const = default;

 private:
  int s_;
  int k_;
  Int X_;
};

// ---------------------------------------------------------------------------
// Finite integer sets

// Sorted, duplicate-free set of 64-bit integers. Construction normalizes;
// all other operations rely on the ordering invariant.
class IntSet {
 public:
  IntSet() = default;
  explicit IntSet(std::vector<Int> elements);
  static IntSet interval(Int lo, Int hi);  // empty when lo > hi

  bool empty() const { return e_.empty(); }
  std::size_t size() const { return e_.size(); }
  Int min() const { return e_.front(); }
  Int max() const { return e_.back(); }
  bool contains(Int v) const { return std::binary_search(e_.begin(), e_.end(), v); }
  std::span<const Int> elements() const { return e_; }

  bool operator==(const IntSet&) const = default;

 private:
  std::vector<Int> e_;
};

// {a + b : a in A, b in B}; empty if either input is. Refuses absurd sizes
// instead of exhausting memory.
IntSet sumset(const IntSet& a, const IntSet& b, std::uint64_t budget = kDefaultBudget);

}  // namespace vincount
