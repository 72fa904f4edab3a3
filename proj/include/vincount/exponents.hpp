#pragma once
//
// Predicted growth exponents and empirical slope fits.
//
// For a degree-k system with s variables per side and a right-hand side
// whose first nonzero entry sits at index ell, the proven saving over the
// trivial count is governed by
//   eta = (k-ell)(k-ell+1)/2 * (1 - 2s/(k(k+1)))
// in the subcritical range 2s < k(k+1), giving the bound exponent
// s - min(1/2, eta). The half-saving threshold eta >= 1/2 holds exactly
// for integers ell iff (2(k-ell)+1)^2 >= 2k^2+2k+1 at the critical
// s = k(k+1)/2 - 1, which pins the largest admissible ell just below
// k - (sqrt(2k^2+2k+1)-1)/2. Empirical exponents come from least-squares
// slopes of log count against log X.

#include <cstdint>
#include <optional>
#include <vector>

#include "vincount/core.hpp"
#include "vincount/counting.hpp"

namespace vincount {

// eta_{s,k}(ell), exact. Defined for 1 <= ell <= k and s >= 1; negative
// above the critical line, zero at ell = k.
Rational eta(int s, int k, int ell);

// sigma(s, k) = k(k+1) / (2(k(k+1) - 2s)); rejects 2s >= k(k+1).
Rational sigma_exponent(int s, int k);

// Largest ell whose eta reaches 1/2 at the critical s, with the real
// threshold it sits under. No such ell exists for k = 2.
struct ThresholdResult {
  double threshold;             // k - (sqrt(2k^2+2k+1) - 1)/2
  std::optional<int> max_ell;   // largest integer 1 <= ell <= threshold
};
ThresholdResult critical_ell_threshold(int k);

// Exact form of "ell qualifies at the critical s": (2(k-ell)+1)^2 >= 2k^2+2k+1.
bool ell_qualifies(int k, int ell);

struct ExponentReport {
  int s;
  int k;
  std::optional<int> ell;                  // absent for homogeneous targets
  bool subcritical;                        // 2s < k(k+1)
  std::optional<Rational> eta_value;       // needs ell
  std::optional<Rational> sigma;           // needs subcritical
  std::optional<Rational> bound_exponent;  // s - min(1/2, eta), needs ell
  int trivial_exponent;                    // s
  Rational supercritical_exponent;         // 2s - k(k+1)/2
  std::optional<double> critical_threshold;  // needs k >= 2
};

ExponentReport predicted_exponents(int s, int k, std::optional<int> ell);

// Exact counts along an increasing list of box radii.
struct ScanPoint {
  Int X;
  Count count;
};
struct ScanResult {
  int s = 0;
  int k = 0;
  std::vector<Int> rhs;
  std::vector<ScanPoint> points;
  bool truncated = false;        // budget ran out partway
  std::optional<Int> refused_at;
};
ScanResult scan_counts(int s, int k, const RhsVector& a, std::span<const Int> radii,
                       std::uint64_t budget = kDefaultBudget, int workers = 1);

// Base-10 log of an exact positive count, stable far beyond double range.
double log10_count(const Count& c);

// Least-squares slope of log count against log X over the positive points.
struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;        // rms residual of the fit
  double endpoint_slope = 0.0;  // chord through the first and last points
  int points_used = 0;
  std::vector<Int> excluded;    // radii whose count was zero
};
FitResult fit_exponent(const ScanResult& scan);

// Set-count bound |X+H|^s (|H|^{-1/2} + |H|^{-eta}) for the restricted
// shifted system.
double tsets_bound(const IntSet& x_set, const IntSet& h_set, int s, int k, int ell,
                   std::uint64_t budget = kDefaultBudget);

}  // namespace vincount
