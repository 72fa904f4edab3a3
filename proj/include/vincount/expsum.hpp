#pragma once
//
// Exponential-sum evaluation and discrete-orthogonality cross-checks.
//
// With e(t) = exp(2 pi i t) and alpha on the k-torus,
//   f(alpha; X) = sum_{|x| <= X} e(alpha_1 x + ... + alpha_k x^k),
//   g(alpha; X) = sum_{|h| <= X} e(alpha_1 p_1(h) + ... + alpha_k p_k(h)),
// and the counts J and H are mean values of |f|^{2s} and |f|^{2s} g(-alpha)
// over the torus. On a product grid alpha_j = m_j / M_j with each M_j
// strictly larger than every phase integer that occurs, the discrete mean
// equals the exact count: root-of-unity columns are exactly orthogonal.
// The float route therefore has to land within rounding error of the
// integer route, which is what verify_* asserts.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "vincount/core.hpp"
#include "vincount/counting.hpp"
#include "vincount/shift_poly.hpp"

namespace vincount {

// A point of the k-torus with components canonicalized to [0, 1).
class TorusPoint {
 public:
  explicit TorusPoint(std::vector<double> components);
  int dim() const { return static_cast<int>(c_.size()); }
  double operator[](int j) const { return c_.at(static_cast<std::size_t>(j) - 1); }  // 1-based
  std::span<const double> components() const { return c_; }
  TorusPoint negated() const;

 private:
  std::vector<double> c_;
};

// exp(2 pi i t).
std::complex<double> unit_phase(double t);

// frac(alpha * p) with the product formed exactly (fma splitting), so the
// phase error per term stays near machine epsilon even for |p| ~ 2^62.
double frac_mul(double alpha, Int p);

// f(alpha; X): absolute error at most (2X+1) * 2^-45.
std::complex<double> eval_f(const TorusPoint& alpha, Int X, int k);

// g(alpha; X) for the shift family of a right-hand side.
std::complex<double> eval_g(const TorusPoint& alpha, Int X, const ShiftPolynomialFamily& f);

// Weighted variant: coefficients c_x for x = -X..X.
class WeightSequence {
 public:
  WeightSequence(Int X, std::vector<std::complex<double>> coeff);
  Int X() const { return X_; }
  const std::complex<double>& at(Int x) const;

 private:
  Int X_;
  std::vector<std::complex<double>> c_;
};

std::complex<double> eval_E(const TorusPoint& alpha, const WeightSequence& w, int k);

// Product quadrature grid alpha = (m_1/M_1, ..., m_k/M_k).
struct GridSpec {
  std::vector<Int> moduli;
  Count points() const;
};

// Moduli large enough for exact orthogonality of the J and H identities.
GridSpec dft_grid_for_J(const SystemShape& shape, const RhsVector& a);
GridSpec dft_grid_for_H(const SystemShape& shape, const RhsVector& a);

constexpr double kDftRelTolerance = 1e-6;

struct DftReport {
  std::string identity;  // "J" or "H"
  GridSpec grid;
  double quadrature;
  Count exact;
  double abs_error;
  bool pass;  // abs_error <= kDftRelTolerance * max(1, exact)
};

DftReport verify_J_via_dft(const SystemShape& shape, const RhsVector& a,
                           std::uint64_t budget = kDefaultBudget, int workers = 1);
DftReport verify_H_via_dft(const SystemShape& shape, const RhsVector& a,
                           std::uint64_t budget = kDefaultBudget, int workers = 1);

}  // namespace vincount
