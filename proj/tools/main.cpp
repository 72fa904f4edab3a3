//
// vincount: exact counting, shift verification, and exponent analysis for
// diagonal power-sum systems on integer boxes and finite sets.
//
// Every subcommand emits one record (JSON by default) on stdout or to
// --output. Exit codes: 0 success, 2 invalid configuration, 3 budget
// refusal, 4 verification failure.

#include <CLI11.hpp>

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli_util.hpp"
#include "selftest.hpp"
#include "vincount/counting.hpp"
#include "vincount/expsum.hpp"
#include "vincount/exponents.hpp"
#include "vincount/table_io.hpp"

namespace vincount::cli {
namespace {

struct Common {
  OutputOpts out;
  int workers = 1;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 1;
};

std::uint64_t budget_from_env() {
  const char* env = std::getenv("VINCOUNT_BUDGET");
  if (!env || !*env) return kDefaultBudget;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0)
    throw std::invalid_argument("VINCOUNT_BUDGET must be a positive integer, got " +
                                std::string(env));
  return static_cast<std::uint64_t>(v);
}

void add_common(CLI::App* cmd, Common& c, bool with_csv = false) {
  cmd->add_option("--format", c.out.format, "Output format")
      ->check(CLI::IsMember(with_csv ? std::vector<std::string>{"json", "text", "csv"}
                                     : std::vector<std::string>{"json", "text"}))
      ->capture_default_str();
  cmd->add_option("--output", c.out.path, "Write the record to a file instead of stdout");
  cmd->add_option("--workers", c.workers, "Worker threads for partitioned loops")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  cmd->add_option("--budget", c.budget, "Work budget (tuples, table products, grid points)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "Seed for sampled checks")->capture_default_str();
}

RhsVector make_rhs(const std::vector<Int>& a, int k) {
  if (a.empty()) return RhsVector::zero(k);
  if (static_cast<int>(a.size()) != k)
    throw std::invalid_argument("right-hand side needs exactly k components");
  return RhsVector(a);
}

ordered_json count_record(const SystemShape& shape, const RhsVector& a, const char* quantity,
                          const CountResult& r) {
  ordered_json j;
  j["s"] = shape.s();
  j["k"] = shape.k();
  j["X"] = shape.X();
  j["a"] = std::vector<Int>(a.components().begin(), a.components().end());
  j["quantity"] = quantity;
  j["value"] = r.value.str();
  j["method"] = r.method;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

int run_count(int s, int k, Int X, const std::vector<Int>& a_in, const std::string& method,
              const Common& c) {
  const SystemShape shape(s, k, X);
  const RhsVector a = make_rhs(a_in, k);
  const CountResult r = method == "brute-force" ? brute_force_J(shape, a, c.budget)
                                                : count_J(shape, a, c.budget);
  emit(count_record(shape, a, "J", r), c.out);
  return 0;
}

int run_count_h(int s, int k, Int X, const std::vector<Int>& a_in, const Common& c) {
  const SystemShape shape(s, k, X);
  const RhsVector a = make_rhs(a_in, k);
  emit(count_record(shape, a, "H", count_H(shape, a, c.budget, c.workers)), c.out);
  return 0;
}

int run_count_set(int s, int k, const std::vector<Int>& a_in, const std::string& xset_text,
                  const std::string& hset_text, const Common& c) {
  const RhsVector a = make_rhs(a_in, k);
  const IntSet xset = parse_set(xset_text);
  ordered_json j;
  j["s"] = s;
  j["k"] = k;
  j["x_set"] = std::vector<Int>(xset.elements().begin(), xset.elements().end());
  CountResult r;
  if (hset_text.empty()) {
    r = count_J_restricted(xset, s, k, a, c.budget);
    j["quantity"] = "J_restricted";
  } else {
    const IntSet hset = parse_set(hset_text);
    j["h_set"] = std::vector<Int>(hset.elements().begin(), hset.elements().end());
    r = count_H_restricted(xset, hset, s, k, a, c.budget, c.workers);
    j["quantity"] = "H_restricted";
  }
  j["a"] = std::vector<Int>(a.components().begin(), a.components().end());
  j["value"] = r.value.str();
  j["method"] = r.method;
  j["elapsed_ms"] = r.elapsed_ms;
  emit(j, c.out);
  return 0;
}

int run_phi(int s, int k, Int X, const std::vector<Int>& n_in,
            const std::vector<std::string>& weight_text, const Common& c) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Int> n = n_in;
  if (n.empty()) n.assign(static_cast<std::size_t>(k), 0);
  std::vector<Rational> w;
  if (weight_text.empty()) {
    if (X < 1) throw std::invalid_argument("phi: X must be at least 1");
    w.assign(static_cast<std::size_t>(2 * X + 1), Rational(1));
  } else {
    for (const auto& t : weight_text) w.push_back(parse_rational(t));
  }
  const Rational value = weighted_phi(w, X, s, k, n);
  ordered_json j;
  j["s"] = s;
  j["k"] = k;
  j["X"] = X;
  j["n"] = n;
  ordered_json ws = ordered_json::array();
  for (const auto& r : w) ws.push_back(r.str());
  j["weights"] = std::move(ws);
  j["quantity"] = "phi";
  j["value"] = value.str();
  j["method"] = "convolution";
  j["elapsed_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  emit(j, c.out);
  return 0;
}

int run_poly(int k, const std::vector<Int>& a_in, const std::vector<Int>& eval_at,
             const Common& c) {
  const RhsVector a = make_rhs(a_in, k);
  const ShiftPolynomialFamily fam{a};
  ordered_json j;
  j["k"] = k;
  j["a"] = std::vector<Int>(a.components().begin(), a.components().end());
  if (a.ell())
    j["ell"] = *a.ell();
  else
    j["ell"] = nullptr;
  ordered_json rows = ordered_json::array();
  for (int jj = 1; jj <= k; ++jj) {
    ordered_json row = ordered_json::array();
    for (int m = 1; m <= jj; ++m) row.push_back(fam.coefficient(jj, m).str());
    rows.push_back(std::move(row));
  }
  j["coefficients"] = std::move(rows);  // row j: coefficient of h^{j-m} at slot m
  if (a.is_zero()) {
    j["degree_profile"] = nullptr;
  } else {
    j["degree_profile"] = degree_profile(fam);
  }
  if (!eval_at.empty()) {
    ordered_json evals = ordered_json::array();
    for (Int h : eval_at) {
      ordered_json e;
      e["h"] = h;
      ordered_json vals = ordered_json::array();
      for (const auto& v : evaluate_family_exact(fam, h)) vals.push_back(v.str());
      e["p"] = std::move(vals);
      evals.push_back(std::move(e));
    }
    j["eval"] = std::move(evals);
  }
  emit(j, c.out);
  return 0;
}

int run_exponents(int s, int k, std::optional<int> ell, const Common& c) {
  const auto rep = predicted_exponents(s, k, ell);
  ordered_json j;
  j["s"] = rep.s;
  j["k"] = rep.k;
  j["ell"] = rep.ell ? ordered_json(*rep.ell) : ordered_json(nullptr);
  j["subcritical"] = rep.subcritical;
  j["eta"] = rep.eta_value ? ordered_json(rep.eta_value->str()) : ordered_json(nullptr);
  j["sigma"] = rep.sigma ? ordered_json(rep.sigma->str()) : ordered_json(nullptr);
  j["bound_exponent"] =
      rep.bound_exponent ? ordered_json(rep.bound_exponent->str()) : ordered_json(nullptr);
  j["trivial_exponent"] = rep.trivial_exponent;
  j["supercritical_exponent"] = rep.supercritical_exponent.str();
  if (rep.critical_threshold) {
    j["critical_ell_threshold"] = *rep.critical_threshold;
    const auto th = critical_ell_threshold(k);
    j["max_qualifying_ell"] = th.max_ell ? ordered_json(*th.max_ell) : ordered_json(nullptr);
  } else {
    j["critical_ell_threshold"] = nullptr;
    j["max_qualifying_ell"] = nullptr;
  }
  emit(j, c.out);
  return 0;
}

int run_verify_lemma(int s, int k, Int X, const std::vector<Int>& a_in, const Common& c) {
  const SystemShape shape(s, k, X);
  const RhsVector a = make_rhs(a_in, k);
  const auto rep = verify_lemma(shape, a, c.budget, c.workers);
  ordered_json j;
  j["s"] = s;
  j["k"] = k;
  j["X"] = X;
  j["a"] = std::vector<Int>(a.components().begin(), a.components().end());
  j["J"] = rep.J.str();
  j["H"] = rep.H.str();
  j["lower_bound"] = rep.lower_bound.str();
  j["ratio"] = rep.ratio ? ordered_json(rep.ratio->str()) : ordered_json(nullptr);
  j["holds"] = rep.holds;
  emit(j, c.out);
  return rep.holds ? 0 : 4;
}

int run_verify_dft(const std::string& identity, int s, int k, Int X,
                   const std::vector<Int>& a_in, const Common& c) {
  const SystemShape shape(s, k, X);
  const RhsVector a = make_rhs(a_in, k);
  const DftReport rep = identity == "H" ? verify_H_via_dft(shape, a, c.budget, c.workers)
                                        : verify_J_via_dft(shape, a, c.budget, c.workers);
  ordered_json j;
  j["identity"] = rep.identity;
  j["s"] = s;
  j["k"] = k;
  j["X"] = X;
  j["a"] = std::vector<Int>(a.components().begin(), a.components().end());
  j["moduli"] = rep.grid.moduli;
  j["grid_points"] = rep.grid.points().str();
  j["quadrature"] = rep.quadrature;
  j["exact"] = rep.exact.str();
  j["abs_error"] = rep.abs_error;
  j["tolerance"] = kDftRelTolerance;
  j["pass"] = rep.pass;
  emit(j, c.out);
  return rep.pass ? 0 : 4;
}

ordered_json scan_json(const ScanResult& scan) {
  ordered_json j;
  j["s"] = scan.s;
  j["k"] = scan.k;
  j["a"] = scan.rhs;
  ordered_json pts = ordered_json::array();
  for (const auto& p : scan.points) {
    ordered_json e;
    e["X"] = p.X;
    e["count"] = p.count.str();
    e["log10X"] = std::log10(static_cast<double>(p.X));
    if (p.count > 0)
      e["log10count"] = log10_count(p.count);
    else
      e["log10count"] = nullptr;
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  j["truncated"] = scan.truncated;
  j["refused_at"] = scan.refused_at ? ordered_json(*scan.refused_at) : ordered_json(nullptr);
  return j;
}

std::string scan_csv(const ScanResult& scan) {
  std::ostringstream os;
  os << "X,count,log10X,log10count\n";
  for (const auto& p : scan.points) {
    os << p.X << "," << p.count.str() << "," << double_str(std::log10(static_cast<double>(p.X)))
       << ",";
    if (p.count > 0) os << double_str(log10_count(p.count));
    os << "\n";
  }
  return os.str();
}

int run_scan(int s, int k, const std::vector<Int>& a_in, const std::vector<Int>& radii,
             const Common& c) {
  const RhsVector a = make_rhs(a_in, k);
  const ScanResult scan = scan_counts(s, k, a, radii, c.budget, c.workers);
  emit(scan_json(scan), c.out, scan_csv(scan));
  return 0;
}

ordered_json fit_json(const FitResult& fit) {
  ordered_json j;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["residual"] = fit.residual;
  j["endpoint_slope"] = fit.endpoint_slope;
  j["points_used"] = fit.points_used;
  j["excluded"] = fit.excluded;
  return j;
}

ScanResult scan_from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  ScanResult scan;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const auto comma = line.find(',', pos);
      cells.push_back(
          line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (cells.size() < 2) throw std::invalid_argument("scan rows need X and count columns");
    if (!cells[0].empty() && (std::isdigit(cells[0][0]) || cells[0][0] == '-')) {
      scan.points.push_back({strict_int(cells[0]), count_base10(cells[1])});
    }
    // anything else is a header row
  }
  return scan;
}

int run_fit(int s, int k, const std::vector<Int>& a_in, const std::vector<Int>& radii,
            const std::string& input, const Common& c) {
  ScanResult scan;
  if (!input.empty()) {
    scan = scan_from_csv(input);
  } else {
    if (radii.empty())
      throw std::invalid_argument("fit needs either --input or --s/--k/--X-list");
    scan = scan_counts(s, k, make_rhs(a_in, k), radii, c.budget, c.workers);
  }
  const FitResult fit = fit_exponent(scan);
  ordered_json j = fit_json(fit);
  if (input.empty()) j["scan"] = scan_json(scan);
  emit(j, c.out);
  return 0;
}

int run_selftest_cmd(bool full, const Common& c) {
  const auto checks = run_selftest(full, c.seed, c.workers);
  int failed = 0;
  ordered_json arr = ordered_json::array();
  for (const auto& chk : checks) {
    if (!chk.pass) ++failed;
    ordered_json e;
    e["name"] = chk.name;
    e["pass"] = chk.pass;
    e["detail"] = chk.detail;
    arr.push_back(std::move(e));
    std::cerr << (chk.pass ? "[ok]   " : "[FAIL] ") << chk.name << ": " << chk.detail << "\n";
  }
  ordered_json j;
  j["full"] = full;
  j["seed"] = c.seed;
  j["checks"] = std::move(arr);
  j["passed"] = static_cast<int>(checks.size()) - failed;
  j["failed"] = failed;
  emit(j, c.out);
  return failed == 0 ? 0 : 4;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"exact counting and verification for diagonal power-sum systems"};
  app.require_subcommand(1);
  Common c;
  c.budget = budget_from_env();

  int rc = 0;
  int s = 1, k = 1, ell = 0;
  Int X = 1;
  std::vector<Int> a, n, radii, eval_at;
  std::string xset, hset, identity = "J", method = "convolution", input;
  std::vector<std::string> weights;
  bool full = false;

  auto* cmd_count = app.add_subcommand("count", "Exact box count of the difference system");
  cmd_count->add_option("--s", s, "Variables per side")->required()->check(CLI::PositiveNumber);
  cmd_count->add_option("--k", k, "Top degree")->required()->check(CLI::PositiveNumber);
  cmd_count->add_option("--X", X, "Box radius")->required()->check(CLI::PositiveNumber);
  cmd_count->add_option("--a", a, "Right-hand side a_1,...,a_k (default zero)")->delimiter(',');
  cmd_count->add_option("--method", method, "convolution or brute-force")
      ->check(CLI::IsMember({"convolution", "brute-force"}))
      ->capture_default_str();
  add_common(cmd_count, c);
  cmd_count->callback([&]() { rc = run_count(s, k, X, a, method, c); });

  auto* cmd_h = app.add_subcommand("count-h", "Shifted count over the doubled box");
  cmd_h->add_option("--s", s, "Variables per side")->required()->check(CLI::PositiveNumber);
  cmd_h->add_option("--k", k, "Top degree")->required()->check(CLI::PositiveNumber);
  cmd_h->add_option("--X", X, "Box radius")->required()->check(CLI::PositiveNumber);
  cmd_h->add_option("--a", a, "Right-hand side a_1,...,a_k (default zero)")->delimiter(',');
  add_common(cmd_h, c);
  cmd_h->callback([&]() { rc = run_count_h(s, k, X, a, c); });

  auto* cmd_set = app.add_subcommand("count-set", "Counts over explicit finite sets");
  cmd_set->add_option("--s", s, "Variables per side")->required()->check(CLI::PositiveNumber);
  cmd_set->add_option("--k", k, "Top degree")->required()->check(CLI::PositiveNumber);
  cmd_set->add_option("--a", a, "Right-hand side a_1,...,a_k (default zero)")->delimiter(',');
  cmd_set->add_option("--xset", xset, "Variable set, {1,2,3} or [-3..3]")->required();
  cmd_set->add_option("--hset", hset, "Shift set; switches to the shifted count");
  add_common(cmd_set, c);
  cmd_set->callback([&]() { rc = run_count_set(s, k, a, xset, hset, c); });

  auto* cmd_phi = app.add_subcommand("phi", "Weighted self-correlation at an offset");
  cmd_phi->add_option("--s", s, "Tuple length")->required()->check(CLI::PositiveNumber);
  cmd_phi->add_option("--k", k, "Top degree")->required()->check(CLI::PositiveNumber);
  cmd_phi->add_option("--X", X, "Box radius")->required()->check(CLI::PositiveNumber);
  cmd_phi->add_option("--n", n, "Offset n_1,...,n_k (default zero)")->delimiter(',');
  cmd_phi->add_option("--weights", weights, "2X+1 nonnegative weights (default all 1)")
      ->delimiter(',');
  add_common(cmd_phi, c);
  cmd_phi->callback([&]() { rc = run_phi(s, k, X, n, weights, c); });

  auto* cmd_poly = app.add_subcommand("poly", "Shift polynomial family of a right-hand side");
  cmd_poly->add_option("--k", k, "Top degree")->required()->check(CLI::PositiveNumber);
  cmd_poly->add_option("--a", a, "Right-hand side a_1,...,a_k")->required()->delimiter(',');
  cmd_poly->add_option("--eval", eval_at, "Shift values to evaluate at")->delimiter(',');
  add_common(cmd_poly, c);
  cmd_poly->callback([&]() { rc = run_poly(k, a, eval_at, c); });

  auto* cmd_exp = app.add_subcommand("exponents", "Predicted growth exponents");
  cmd_exp->add_option("--s", s, "Variables per side")->required()->check(CLI::PositiveNumber);
  cmd_exp->add_option("--k", k, "Top degree")->required()->check(CLI::PositiveNumber);
  auto* ell_opt = cmd_exp->add_option("--ell", ell, "Leading index of the right-hand side")
                      ->check(CLI::PositiveNumber);
  add_common(cmd_exp, c);
  cmd_exp->callback([&]() {
    rc = run_exponents(s, k, ell_opt->count() ? std::optional<int>(ell) : std::nullopt, c);
  });

  auto* cmd_lemma = app.add_subcommand("verify-lemma", "Check H >= (2X+1) J exactly");
  cmd_lemma->add_option("--s", s, "Variables per side")->required()->check(CLI::PositiveNumber);
  cmd_lemma->add_option("--k", k, "Top degree")->required()->check(CLI::PositiveNumber);
  cmd_lemma->add_option("--X", X, "Box radius")->required()->check(CLI::PositiveNumber);
  cmd_lemma->add_option("--a", a, "Right-hand side a_1,...,a_k (default zero)")->delimiter(',');
  add_common(cmd_lemma, c);
  cmd_lemma->callback([&]() { rc = run_verify_lemma(s, k, X, a, c); });

  auto* cmd_dft = app.add_subcommand("verify-dft", "Cross-check a count against quadrature");
  cmd_dft->add_option("--identity", identity, "J or H")
      ->check(CLI::IsMember({"J", "H"}))
      ->capture_default_str();
  cmd_dft->add_option("--s", s, "Variables per side")->required()->check(CLI::PositiveNumber);
  cmd_dft->add_option("--k", k, "Top degree")->required()->check(CLI::PositiveNumber);
  cmd_dft->add_option("--X", X, "Box radius")->required()->check(CLI::PositiveNumber);
  cmd_dft->add_option("--a", a, "Right-hand side a_1,...,a_k (default zero)")->delimiter(',');
  add_common(cmd_dft, c);
  cmd_dft->callback([&]() { rc = run_verify_dft(identity, s, k, X, a, c); });

  auto* cmd_scan = app.add_subcommand("scan", "Exact counts along increasing box radii");
  cmd_scan->add_option("--s", s, "Variables per side")->required()->check(CLI::PositiveNumber);
  cmd_scan->add_option("--k", k, "Top degree")->required()->check(CLI::PositiveNumber);
  cmd_scan->add_option("--a", a, "Right-hand side a_1,...,a_k (default zero)")->delimiter(',');
  cmd_scan->add_option("--X-list", radii, "Strictly increasing radii")->required()->delimiter(',');
  add_common(cmd_scan, c, /*with_csv=*/true);
  cmd_scan->callback([&]() { rc = run_scan(s, k, a, radii, c); });

  auto* cmd_fit = app.add_subcommand("fit", "Least-squares exponent of a count scan");
  cmd_fit->add_option("--s", s, "Variables per side")->check(CLI::PositiveNumber);
  cmd_fit->add_option("--k", k, "Top degree")->check(CLI::PositiveNumber);
  cmd_fit->add_option("--a", a, "Right-hand side a_1,...,a_k (default zero)")->delimiter(',');
  cmd_fit->add_option("--X-list", radii, "Strictly increasing radii")->delimiter(',');
  cmd_fit->add_option("--input", input, "Fit a scan CSV instead of counting");
  add_common(cmd_fit, c);
  cmd_fit->callback([&]() { rc = run_fit(s, k, a, radii, input, c); });

  auto* cmd_self = app.add_subcommand("selftest", "Exhaustive small-grid invariant battery");
  cmd_self->add_flag("--full", full, "Release-gate grid sizes");
  add_common(cmd_self, c);
  cmd_self->callback([&]() { rc = run_selftest_cmd(full, c); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return rc;
}

}  // namespace
}  // namespace vincount::cli

int main(int argc, char** argv) {
  try {
    return vincount::cli::dispatch(argc, argv);
  } catch (const vincount::BudgetExceeded& e) {
    std::cerr << "budget refusal: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::overflow_error& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
