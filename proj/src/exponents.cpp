#include "vincount/exponents.hpp"

#include <cmath>
#include <numbers>

namespace vincount {

namespace {

// log of an exact positive count, stable for values far beyond double range.
double log_count(const Count& c) {
  if (c <= 0) throw std::invalid_argument("log_count: needs a positive count");
  const unsigned bits = static_cast<unsigned>(msb(c));
  if (bits <= 900) return std::log(c.convert_to<double>());
  const unsigned shift = bits - 52;
  const double mant = Count(c >> shift).convert_to<double>();
  return std::log(mant) + shift * std::numbers::ln2_v<double>;
}

double to_double(const Rational& r) {
  return r.convert_to<double>();
}

}  // namespace

Rational eta(int s, int k, int ell) {
  if (k < 1) throw std::invalid_argument("eta: k must be at least 1");
  if (s < 1) throw std::invalid_argument("eta: s must be at least 1");
  if (ell < 1 || ell > k) throw std::invalid_argument("eta: need 1 <= ell <= k");
  const long long d = k - ell;
  const Rational triangular(d * (d + 1), 2);
  const Rational factor = Rational(1) - Rational(2LL * s, static_cast<long long>(k) * (k + 1));
  return triangular * factor;
}

Rational sigma_exponent(int s, int k) {
  if (k < 1) throw std::invalid_argument("sigma_exponent: k must be at least 1");
  if (s < 1) throw std::invalid_argument("sigma_exponent: s must be at least 1");
  const long long kk = static_cast<long long>(k) * (k + 1);
  if (2LL * s >= kk)
    throw std::invalid_argument("sigma_exponent: defined only in the subcritical range 2s < k(k+1)");
  return Rational(kk, 2 * (kk - 2LL * s));
}

bool ell_qualifies(int k, int ell) {
  if (k < 1 || ell < 1 || ell > k) throw std::invalid_argument("ell_qualifies: need 1 <= ell <= k");
  const long long d = 2LL * (k - ell) + 1;
  return d * d >= 2LL * k * k + 2LL * k + 1;
}

ThresholdResult critical_ell_threshold(int k) {
  if (k < 2) throw std::invalid_argument("critical_ell_threshold: k must be at least 2");
  ThresholdResult r;
  r.threshold =
      k - (std::sqrt(2.0 * k * k + 2.0 * k + 1.0) - 1.0) / 2.0;
  // The exact qualification test decides the integer part; the float
  // threshold is only reported.
  int best = 0;
  for (int ell = 1; ell <= k; ++ell)
    if (ell_qualifies(k, ell)) best = ell;
  if (best >= 1) r.max_ell = best;
  return r;
}

ExponentReport predicted_exponents(int s, int k, std::optional<int> ell) {
  if (k < 1) throw std::invalid_argument("predicted_exponents: k must be at least 1");
  if (s < 1) throw std::invalid_argument("predicted_exponents: s must be at least 1");
  ExponentReport rep;
  rep.s = s;
  rep.k = k;
  rep.ell = ell;
  const long long kk = static_cast<long long>(k) * (k + 1);
  rep.subcritical = 2LL * s < kk;
  rep.trivial_exponent = s;
  rep.supercritical_exponent = Rational(2LL * s) - Rational(kk, 2);
  if (rep.subcritical) rep.sigma = sigma_exponent(s, k);
  if (ell) {
    rep.eta_value = eta(s, k, *ell);
    const Rational half(1, 2);
    const Rational saving = *rep.eta_value < half ? *rep.eta_value : half;
    rep.bound_exponent = Rational(s) - saving;
  }
  if (k >= 2) rep.critical_threshold = critical_ell_threshold(k).threshold;
  return rep;
}

ScanResult scan_counts(int s, int k, const RhsVector& a, std::span<const Int> radii,
                       std::uint64_t budget, int workers) {
  (void)workers;
  ScanResult out;
  out.s = s;
  out.k = k;
  out.rhs.assign(a.components().begin(), a.components().end());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] < 1) throw std::invalid_argument("scan_counts: radii must be positive");
    if (i > 0 && radii[i] <= radii[i - 1])
      throw std::invalid_argument("scan_counts: radii must be strictly increasing");
  }
  for (Int X : radii) {
    try {
      out.points.push_back({X, count_J(SystemShape(s, k, X), a, budget).value});
    } catch (const BudgetExceeded&) {
      out.truncated = true;
      out.refused_at = X;
      break;
    }
  }
  return out;
}

double log10_count(const Count& c) {
  return log_count(c) / std::numbers::ln10_v<double>;
}

FitResult fit_exponent(const ScanResult& scan) {
  FitResult fit;
  std::vector<double> xs, ys;
  for (const auto& p : scan.points) {
    if (p.count > 0) {
      xs.push_back(std::log(static_cast<double>(p.X)));
      ys.push_back(log_count(p.count));
    } else {
      fit.excluded.push_back(p.X);
    }
  }
  if (xs.size() < 3)
    throw std::invalid_argument("fit_exponent: needs at least 3 positive counts");
  const std::size_t n = xs.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(n));
  fit.endpoint_slope = (ys[n - 1] - ys[0]) / (xs[n - 1] - xs[0]);
  fit.points_used = static_cast<int>(n);
  return fit;
}

double tsets_bound(const IntSet& x_set, const IntSet& h_set, int s, int k, int ell,
                   std::uint64_t budget) {
  if (x_set.empty() || h_set.empty())
    throw std::invalid_argument("tsets_bound: sets must be nonempty");
  if (s < 1) throw std::invalid_argument("tsets_bound: s must be at least 1");
  const double joint = static_cast<double>(sumset(x_set, h_set, budget).size());
  const double hsize = static_cast<double>(h_set.size());
  const double e = to_double(eta(s, k, ell));
  return std::pow(joint, s) * (std::pow(hsize, -0.5) + std::pow(hsize, -e));
}

}  // namespace vincount
