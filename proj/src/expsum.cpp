#include "vincount/expsum.hpp"

#include <cmath>
#include <numbers>

#include "vincount/parallel.hpp"

namespace vincount {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

inline double frac_part(double v) {
  double f = v - std::floor(v);
  return f < 1.0 ? f : 0.0;  // guard against rounding to exactly 1
}

struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

}  // namespace

TorusPoint::TorusPoint(std::vector<double> components) : c_(std::move(components)) {
  if (c_.empty()) throw std::invalid_argument("TorusPoint: needs at least one component");
  for (double& v : c_) {
    if (!std::isfinite(v)) throw std::invalid_argument("TorusPoint: components must be finite");
    v = frac_part(v);
  }
}

TorusPoint TorusPoint::negated() const {
  std::vector<double> n(c_.begin(), c_.end());
  for (double& v : n) v = -v;
  return TorusPoint(std::move(n));
}

std::complex<double> unit_phase(double t) {
  const double w = kTwoPi * t;
  return {std::cos(w), std::sin(w)};
}

double frac_mul(double alpha, Int p) {
  // Split p into two exactly representable doubles, then form each product
  // as a (head, fma-tail) pair; only fractional parts are kept.
  const Int lo_i = p % (Int(1) << 32);
  const double hi = static_cast<double>(p - lo_i);
  const double lo = static_cast<double>(lo_i);
  double f = 0.0;
  for (double part : {hi, lo}) {
    const double ph = alpha * part;
    const double pl = std::fma(alpha, part, -ph);
    f += frac_part(ph) + frac_part(pl);
  }
  return frac_part(f);
}

std::complex<double> eval_f(const TorusPoint& alpha, Int X, int k) {
  if (alpha.dim() != k) throw std::invalid_argument("eval_f: point dimension must equal k");
  if (X < 0) throw std::invalid_argument("eval_f: X must be nonnegative");
  KahanSum re, im;
  for (Int x = -X; x <= X; ++x) {
    double phase = 0.0;
    Int pw = 1;
    for (int j = 1; j <= k; ++j) {
      pw = checked_mul(pw, x);
      phase += frac_mul(alpha[j], pw);
    }
    const auto z = unit_phase(frac_part(phase));
    re.add(z.real());
    im.add(z.imag());
  }
  return {re.s, im.s};
}

std::complex<double> eval_g(const TorusPoint& alpha, Int X, const ShiftPolynomialFamily& f) {
  if (alpha.dim() != f.k()) throw std::invalid_argument("eval_g: point dimension must equal k");
  if (X < 0) throw std::invalid_argument("eval_g: X must be nonnegative");
  KahanSum re, im;
  for (Int h = -X; h <= X; ++h) {
    const PowerSumVector p = evaluate_family(f, h);
    double phase = 0.0;
    for (int j = 1; j <= f.k(); ++j)
      phase += frac_mul(alpha[j], p[static_cast<std::size_t>(j - 1)]);
    const auto z = unit_phase(frac_part(phase));
    re.add(z.real());
    im.add(z.imag());
  }
  return {re.s, im.s};
}

WeightSequence::WeightSequence(Int X, std::vector<std::complex<double>> coeff)
    : X_(X), c_(std::move(coeff)) {
  if (X_ < 0) throw std::invalid_argument("WeightSequence: X must be nonnegative");
  if (c_.size() != static_cast<std::size_t>(2 * X_ + 1))
    throw std::invalid_argument("WeightSequence: need exactly 2X+1 coefficients");
}

const std::complex<double>& WeightSequence::at(Int x) const {
  if (x < -X_ || x > X_) throw std::out_of_range("WeightSequence: index outside [-X, X]");
  return c_[static_cast<std::size_t>(x + X_)];
}

std::complex<double> eval_E(const TorusPoint& alpha, const WeightSequence& w, int k) {
  if (alpha.dim() != k) throw std::invalid_argument("eval_E: point dimension must equal k");
  KahanSum re, im;
  for (Int x = -w.X(); x <= w.X(); ++x) {
    double phase = 0.0;
    Int pw = 1;
    for (int j = 1; j <= k; ++j) {
      pw = checked_mul(pw, x);
      phase += frac_mul(alpha[j], pw);
    }
    const auto z = w.at(x) * unit_phase(frac_part(phase));
    re.add(z.real());
    im.add(z.imag());
  }
  return {re.s, im.s};
}

Count GridSpec::points() const {
  Count n(1);
  for (Int m : moduli) n *= m;
  return n;
}

GridSpec dft_grid_for_J(const SystemShape& shape, const RhsVector& a) {
  if (a.k() != shape.k()) throw std::invalid_argument("dft_grid_for_J: degree mismatch");
  GridSpec g;
  g.moduli.reserve(static_cast<std::size_t>(shape.k()));
  Count pw(1);
  for (int j = 1; j <= shape.k(); ++j) {
    pw *= shape.X();
    // Phase integers are sums of 2s X-box j-th powers shifted by a_j.
    const Count range = 4 * shape.s() * pw;
    const Count peak = 2 * shape.s() * pw + abs(Count(a[j]));
    g.moduli.push_back(checked_narrow((range > peak ? range : peak) + 1));
  }
  return g;
}

GridSpec dft_grid_for_H(const SystemShape& shape, const RhsVector& a) {
  if (a.k() != shape.k()) throw std::invalid_argument("dft_grid_for_H: degree mismatch");
  const ShiftPolynomialFamily fam{a};
  // Componentwise peak of |p_j(h)| over the shift range.
  std::vector<Count> peak(static_cast<std::size_t>(shape.k()), Count(0));
  for (Int h = -shape.X(); h <= shape.X(); ++h) {
    const auto p = evaluate_family_exact(fam, h);
    for (std::size_t i = 0; i < p.size(); ++i)
      if (abs(p[i]) > peak[i]) peak[i] = abs(p[i]);
  }
  GridSpec g;
  g.moduli.reserve(static_cast<std::size_t>(shape.k()));
  Count pw(1);
  for (int j = 1; j <= shape.k(); ++j) {
    pw *= 2 * shape.X();
    g.moduli.push_back(checked_narrow(4 * shape.s() * pw + peak[static_cast<std::size_t>(j - 1)] + 1));
  }
  return g;
}

namespace {

// Phase table for one family of rows: row r contributes phase
// sum_j m_j * v[r][j] / M_j, with v already reduced into [0, M_j) and any
// sign folded in. rot[r][j] advances row r one step along axis j.
struct PhasorBank {
  std::vector<std::vector<Int>> v;
  std::vector<std::vector<std::complex<double>>> rot;

  void add_row(std::span<const Count> raw, int sign, const std::vector<Int>& moduli) {
    std::vector<Int> row(moduli.size());
    std::vector<std::complex<double>> rrot(moduli.size());
    for (std::size_t j = 0; j < moduli.size(); ++j) {
      const Int M = moduli[j];
      Int r = checked_narrow(((raw[j] % M) + M) % M);
      if (sign < 0) r = (M - r) % M;
      row[j] = r;
      rrot[j] = unit_phase(static_cast<double>(r) / static_cast<double>(M));
    }
    v.push_back(std::move(row));
    rot.push_back(std::move(rrot));
  }

  // Exact phasor for row r at grid index m, via integer arithmetic.
  std::complex<double> phasor_at(std::size_t r, const std::vector<Int>& m,
                                 const std::vector<Int>& moduli) const {
    double frac = 0.0;
    for (std::size_t j = 0; j < moduli.size(); ++j) {
      const Int M = moduli[j];
      frac += static_cast<double>((m[j] % M) * (v[r][j] % M) % M) / static_cast<double>(M);
    }
    return unit_phase(frac - std::floor(frac));
  }
};

// Sum over the full grid of norm(sum bank0)^s * Re(sum bank1), walking the
// grid in odometer order with one rotation multiply per step and axis.
// Chunks are fixed-size in the linear index and re-anchored exactly, so the
// result does not depend on the worker count.
double sweep_grid(const GridSpec& grid, const PhasorBank& bank0, const PhasorBank& bank1,
                  int s_power, int workers) {
  const std::vector<Int>& M = grid.moduli;
  const std::size_t k = M.size();
  const std::uint64_t total = grid.points().convert_to<std::uint64_t>();
  constexpr std::uint64_t kChunk = 1 << 14;

  auto partials = run_chunked<double>(
      total, kChunk, workers, [&](std::uint64_t b, std::uint64_t e, std::uint64_t) {
        // Decode the odometer at the chunk anchor.
        std::vector<Int> m(k);
        std::uint64_t rem = b;
        for (std::size_t j = k; j-- > 0;) {
          m[j] = static_cast<Int>(rem % static_cast<std::uint64_t>(M[j]));
          rem /= static_cast<std::uint64_t>(M[j]);
        }
        std::vector<std::complex<double>> z0(bank0.v.size()), z1(bank1.v.size());
        for (std::size_t r = 0; r < z0.size(); ++r) z0[r] = bank0.phasor_at(r, m, M);
        for (std::size_t r = 0; r < z1.size(); ++r) z1[r] = bank1.phasor_at(r, m, M);

        KahanSum acc;
        for (std::uint64_t i = b; i < e; ++i) {
          std::complex<double> s0{0.0, 0.0}, s1{0.0, 0.0};
          for (const auto& z : z0) s0 += z;
          for (const auto& z : z1) s1 += z;
          const double nrm = std::norm(s0);
          double p = 1.0;
          for (int q = 0; q < s_power; ++q) p *= nrm;
          acc.add(p * s1.real());

          if (i + 1 == e) break;
          // Advance: multiply the stepped axis; a full wrap has advanced the
          // phase by an integer, so carrying to the next axis needs no fixup.
          std::size_t j = k - 1;
          for (;;) {
            for (std::size_t r = 0; r < z0.size(); ++r) z0[r] *= bank0.rot[r][j];
            for (std::size_t r = 0; r < z1.size(); ++r) z1[r] *= bank1.rot[r][j];
            if (++m[j] < M[j]) break;
            m[j] = 0;
            if (j == 0) break;
            --j;
          }
        }
        return acc.s;
      });

  KahanSum total_sum;
  for (double p : partials) total_sum.add(p);
  return total_sum.s;
}

DftReport verify_common(const char* identity, const GridSpec& grid, const PhasorBank& bank0,
                        const PhasorBank& bank1, int s_power, Count exact, std::uint64_t budget,
                        int workers) {
  if (grid.points() > budget)
    throw BudgetExceeded("quadrature grid of " + grid.points().str() + " points exceeds budget " +
                         std::to_string(budget));
  const double raw = sweep_grid(grid, bank0, bank1, s_power, workers);
  DftReport rep;
  rep.identity = identity;
  rep.grid = grid;
  rep.quadrature = raw / grid.points().convert_to<double>();
  rep.exact = std::move(exact);
  const double exact_d = rep.exact.convert_to<double>();
  rep.abs_error = std::abs(rep.quadrature - exact_d);
  rep.pass = rep.abs_error <= kDftRelTolerance * std::max(1.0, exact_d);
  return rep;
}

void add_power_rows(PhasorBank& bank, Int radius, int k, const std::vector<Int>& moduli) {
  for (Int x = -radius; x <= radius; ++x) {
    std::vector<Count> raw(static_cast<std::size_t>(k));
    Count pw(1);
    for (int j = 0; j < k; ++j) {
      pw *= x;
      raw[static_cast<std::size_t>(j)] = pw;
    }
    bank.add_row(raw, +1, moduli);
  }
}

}  // namespace

DftReport verify_J_via_dft(const SystemShape& shape, const RhsVector& a, std::uint64_t budget,
                           int workers) {
  const GridSpec grid = dft_grid_for_J(shape, a);
  PhasorBank bank0, bank1;
  add_power_rows(bank0, shape.X(), shape.k(), grid.moduli);
  std::vector<Count> raw(a.components().begin(), a.components().end());
  bank1.add_row(raw, -1, grid.moduli);
  Count exact = count_J(shape, a, budget).value;
  return verify_common("J", grid, bank0, bank1, shape.s(), std::move(exact), budget, workers);
}

DftReport verify_H_via_dft(const SystemShape& shape, const RhsVector& a, std::uint64_t budget,
                           int workers) {
  const GridSpec grid = dft_grid_for_H(shape, a);
  PhasorBank bank0, bank1;
  add_power_rows(bank0, 2 * shape.X(), shape.k(), grid.moduli);
  const ShiftPolynomialFamily fam{a};
  for (Int h = -shape.X(); h <= shape.X(); ++h)
    bank1.add_row(evaluate_family_exact(fam, h), -1, grid.moduli);
  Count exact = count_H(shape, a, budget, workers).value;
  return verify_common("H", grid, bank0, bank1, shape.s(), std::move(exact), budget, workers);
}

}  // namespace vincount
