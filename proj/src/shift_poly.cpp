#include "vincount/shift_poly.hpp"

#include <mutex>

namespace vincount {

namespace {
// Cached Pascal triangle; grows on demand. Row n holds C(n, 0..n).
std::vector<std::vector<Count>> g_pascal{{Count(1)}};
std::mutex g_pascal_mutex;
}  // namespace

Count binomial(int n, int r) {
  if (n < 0 || r < 0 || r > n) throw std::invalid_argument("binomial: need 0 <= r <= n");
  std::lock_guard<std::mutex> lock(g_pascal_mutex);
  while (static_cast<int>(g_pascal.size()) <= n) {
    const auto& prev = g_pascal.back();
    std::vector<Count> row(prev.size() + 1, Count(1));
    for (std::size_t i = 1; i + 1 < row.size(); ++i) row[i] = prev[i - 1] + prev[i];
    g_pascal.push_back(std::move(row));
  }
  return g_pascal[static_cast<std::size_t>(n)][static_cast<std::size_t>(r)];
}

ShiftPolynomialFamily::ShiftPolynomialFamily(RhsVector a) : a_(std::move(a)) {
  rows_.resize(static_cast<std::size_t>(a_.k()));
  for (int j = 1; j <= a_.k(); ++j) {
    auto& row = rows_[static_cast<std::size_t>(j - 1)];
    row.reserve(static_cast<std::size_t>(j));
    for (int m = 1; m <= j; ++m) row.push_back(binomial(j, m) * a_[m]);
  }
}

const Count& ShiftPolynomialFamily::coefficient(int j, int m) const {
  if (j < 1 || j > k() || m < 1 || m > j)
    throw std::invalid_argument("coefficient: need 1 <= m <= j <= k");
  return rows_[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(m - 1)];
}

int ShiftPolynomialFamily::realized_degree(int j) const {
  if (j < 1 || j > k()) throw std::invalid_argument("realized_degree: j out of range");
  const auto& row = rows_[static_cast<std::size_t>(j - 1)];
  for (int m = 1; m <= j; ++m)
    if (row[static_cast<std::size_t>(m - 1)] != 0) return j - m;  // power of h at slot m
  return 0;
}

std::vector<Count> evaluate_family_exact(const ShiftPolynomialFamily& f, Int h) {
  std::vector<Count> out;
  out.reserve(static_cast<std::size_t>(f.k()));
  for (int j = 1; j <= f.k(); ++j) {
    // Horner over slots m = 1..j, i.e. powers h^{j-1} down to h^0.
    Count acc(0);
    for (int m = 1; m <= j; ++m) acc = acc * h + f.coefficient(j, m);
    out.push_back(std::move(acc));
  }
  return out;
}

PowerSumVector evaluate_family(const ShiftPolynomialFamily& f, Int h) {
  std::vector<Count> exact = evaluate_family_exact(f, h);
  PowerSumVector out(exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i) out[i] = checked_narrow(exact[i]);
  return out;
}

std::vector<int> degree_profile(const ShiftPolynomialFamily& f) {
  const auto ell = f.rhs().ell();
  if (!ell) throw std::invalid_argument("degree_profile: zero right-hand side has no leading index");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(f.k()));
  for (int j = 1; j <= f.k(); ++j) {
    const int formula = j - *ell > 0 ? j - *ell : 0;
    const int realized = f.realized_degree(j);
    if (realized != formula)
      throw std::logic_error("degree_profile: coefficient table disagrees with degree law");
    out.push_back(formula);
  }
  return out;
}

std::pair<std::vector<Int>, std::vector<Int>> shift_solution(std::span<const Int> x,
                                                             std::span<const Int> y, Int h) {
  std::pair<std::vector<Int>, std::vector<Int>> out;
  out.first.reserve(x.size());
  out.second.reserve(y.size());
  for (Int v : x) out.first.push_back(checked_add(v, h));
  for (Int v : y) out.second.push_back(checked_add(v, h));
  return out;
}

}  // namespace vincount
