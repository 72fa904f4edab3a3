#include "vincount/core.hpp"

#include <limits>

namespace vincount {

Int checked_narrow(const Count& v) {
  if (v < std::numeric_limits<Int>::min() || v > std::numeric_limits<Int>::max())
    throw std::overflow_error("value does not fit in 64 bits: " + v.str());
  return v.convert_to<Int>();
}

PowerSumVector power_sum_vector(std::span<const Int> x, int k) {
  if (k < 1) throw std::invalid_argument("power_sum_vector: degree must be at least 1");
  PowerSumVector v(static_cast<std::size_t>(k), 0);
  for (Int xi : x) {
    Int pw = 1;
    for (int j = 0; j < k; ++j) {
      pw = checked_mul(pw, xi);
      v[static_cast<std::size_t>(j)] = checked_add(v[static_cast<std::size_t>(j)], pw);
    }
  }
  return v;
}

PowerSumVector psv_add(const PowerSumVector& a, const PowerSumVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("psv_add: length mismatch");
  PowerSumVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

PowerSumVector psv_sub(const PowerSumVector& a, const PowerSumVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("psv_sub: length mismatch");
  PowerSumVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_sub(a[i], b[i]);
  return r;
}

namespace {
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace

std::size_t PsvHash::operator()(const PowerSumVector& v) const noexcept {
  std::uint64_t h = 0x2545f4914f6cdd1dull ^ static_cast<std::uint64_t>(v.size());
  for (Int c : v) h = splitmix64(h ^ static_cast<std::uint64_t>(c));
  return static_cast<std::size_t>(h);
}

std::optional<int> first_nonzero_index(std::span<const Int> a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) return static_cast<int>(i) + 1;
  return std::nullopt;
}

RhsVector::RhsVector(std::vector<Int> components) : c_(std::move(components)) {
  if (c_.empty()) throw std::invalid_argument("RhsVector: needs at least one component");
  ell_ = first_nonzero_index(c_);
}

RhsVector RhsVector::zero(int k) {
  if (k < 1) throw std::invalid_argument("RhsVector: degree must be at least 1");
  return RhsVector(std::vector<Int>(static_cast<std::size_t>(k), 0));
}

SystemShape::SystemShape(int s, int k, Int X) : s_(s), k_(k), X_(X) {
  if (s < 1) throw std::invalid_argument("SystemShape: s must be at least 1");
  if (k < 1) throw std::invalid_argument("SystemShape: k must be at least 1");
  if (X < 1) throw std::invalid_argument("SystemShape: X must be at least 1");
}

bool SystemShape::subcritical() const {
  return 2 * static_cast<long long>(s_) < static_cast<long long>(k_) * (k_ + 1);
}

IntSet::IntSet(std::vector<Int> elements) : e_(std::move(elements)) {
  std::sort(e_.begin(), e_.end());
  e_.erase(std::unique(e_.begin(), e_.end()), e_.end());
}

IntSet IntSet::interval(Int lo, Int hi) {
  IntSet s;
  if (lo > hi) return s;
  // width = hi - lo + 1 without overflow
  std::uint64_t width = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (width > kDefaultBudget)
    throw BudgetExceeded("interval of " + std::to_string(width) + " elements refused");
  s.e_.resize(width);
  Int v = lo;
  for (std::uint64_t i = 0; i < width; ++i) s.e_[i] = v++;
  return s;
}

namespace {
bool is_contiguous(const IntSet& s) {
  return static_cast<std::uint64_t>(s.max()) - static_cast<std::uint64_t>(s.min()) + 1 == s.size();
}
}  // namespace

IntSet sumset(const IntSet& a, const IntSet& b, std::uint64_t budget) {
  if (a.empty() || b.empty()) return IntSet();
  if (is_contiguous(a) && is_contiguous(b))
    return IntSet::interval(checked_add(a.min(), b.min()), checked_add(a.max(), b.max()));
  const std::uint64_t pairs = static_cast<std::uint64_t>(a.size()) * b.size();
  if (pairs > budget)
    throw BudgetExceeded("sumset over " + std::to_string(pairs) + " pairs refused");
  if (pairs <= 1u << 22) {
    std::vector<Int> sums;
    sums.reserve(pairs);
    for (Int x : a.elements())
      for (Int y : b.elements()) sums.push_back(checked_add(x, y));
    return IntSet(std::move(sums));
  }
  // Large inputs: mark hits over the value range instead of sorting pairs.
  const Int lo = checked_add(a.min(), b.min());
  const Int hi = checked_add(a.max(), b.max());
  const std::uint64_t width = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (width > budget)
    throw BudgetExceeded("sumset spanning " + std::to_string(width) + " values refused");
  std::vector<char> hit(width, 0);
  for (Int x : a.elements())
    for (Int y : b.elements()) hit[static_cast<std::uint64_t>(x + y - lo)] = 1;
  std::vector<Int> sums;
  for (std::uint64_t i = 0; i < width; ++i)
    if (hit[i]) sums.push_back(lo + static_cast<Int>(i));
  return IntSet(std::move(sums));
}

}  // namespace vincount
