// Acceptance checks. Prints one PASS/FAIL line per criterion.
//   acceptance                 run every criterion
//   acceptance --criterion N   run criterion N only
// Exit status is nonzero when any selected criterion fails.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hardy_kato/constants.hpp"
#include "hardy_kato/extremal.hpp"
#include "hardy_kato/specfun.hpp"
#include "hardy_kato/verify.hpp"

using namespace hk;

namespace {

constexpr double half_pi = std::numbers::pi / 2;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// ---------------------------------------------------------------------------

Outcome closed_forms() {
  Outcome o;
  double worst = 0.0;
  for (int n = 3; n <= 12; ++n) {
    const double g1 = std::tgamma(n / 4.0), g2 = std::tgamma((n - 2) / 4.0);
    const double direct = 2.0 * g1 * g1 / (g2 * g2);
    worst = std::max({worst, rel(optimal_constant({n, 2}), direct), rel(optimal_constant({n, 2}), kato_constant(n))});
  }
  const double h43 = optimal_constant({4, 3});
  o.require(worst <= 1e-12, fmt::format("H(n,2) vs Kato form: max rel error {:.3g}", worst));
  o.require(std::abs(h43 - 0.5) <= 1e-12, fmt::format("H(4,3) = {}", h43));
  if (o.pass) o.detail = fmt::format("max rel error {:.2g} over n=3..12; |H(4,3)-1/2| = {:.2g}", worst, std::abs(h43 - 0.5));
  return o;
}

Outcome endpoint_limits() {
  Outcome o;
  double worst_ratio = 0.0, worst_hardy = 0.0;
  for (int n = 3; n <= 12; ++n) {
    for (int k = 2; k < 5; ++k) {
      const double a = optimal_constant({n, n - std::pow(10.0, -k)});
      const double b = optimal_constant({n, n - std::pow(10.0, -k - 1)});
      worst_ratio = std::max(worst_ratio, std::abs(a / b / 10.0 - 1.0));
    }
    double prev = 1e300;
    for (int k = 2; k <= 5; ++k) {
      const double d = std::abs(interior_coefficient({n, n - std::pow(10.0, -k)}) - hardy_constant(n));
      o.require(d < prev, fmt::format("interior coefficient not approaching Hardy constant, n={}", n));
      prev = d;
    }
    worst_hardy = std::max(worst_hardy, prev / hardy_constant(n));
  }
  o.require(worst_ratio <= 0.05, fmt::format("linear vanishing ratio off by {:.3g}", worst_ratio));
  o.require(worst_hardy <= 1e-4, fmt::format("interior coefficient at n-1e-5 off by {:.3g}", worst_hardy));
  if (o.pass)
    o.detail = fmt::format("H ratio off 10 by at most {:.2g}%; interior/Hardy - 1 at n-1e-5 <= {:.2g}",
                           100 * worst_ratio, worst_hardy);
  return o;
}

Outcome shooting() {
  Outcome o;
  double worst = 0.0;
  for (int n = 3; n <= 6; ++n) {
    for (double beta : {2.0, 2.5, (n + 2) / 2.0, n - 0.5}) {
      const double a = shoot_alpha({n, beta}, half_pi - 1e-3, 1e-7);
      const double d = std::abs(a + optimal_constant({n, beta}));
      worst = std::max(worst, d);
      o.require(d <= 1e-5, fmt::format("(n={}, beta={}) |alpha + H| = {:.3g}", n, beta, d));
    }
  }
  if (o.pass) o.detail = fmt::format("max |alpha + H| = {:.2g} over 16 grid points", worst);
  return o;
}

Outcome trichotomy() {
  Outcome o;
  const double eps = 1e-8;
  const double z = 1 - eps;

  struct Case {
    Hyp2F1Params p;
    LimitKind kind;
  };
  const Case cases[] = {
      {{0.5, 0.5, 2.0}, LimitKind::Finite},      {{1.25, 0.5, 2.5}, LimitKind::Finite},
      {{0.5, 1.0, 1.5}, LimitKind::LogDivergent}, {{1.5, 0.5, 2.0}, LimitKind::LogDivergent},
      {{1.0, 2.0, 1.5}, LimitKind::PowerDivergent}, {{0.75, 1.25, 1.5}, LimitKind::PowerDivergent},
  };
  std::vector<std::string> notes;
  for (const auto& c : cases) {
    const Hyp2F1Limit lim = hyp2f1_at_one(c.p);
    const std::string tag = fmt::format("F({},{},{})", c.p.a, c.p.b, c.p.c);
    o.require(lim.kind == c.kind, tag + " misclassified");
    const double f = hyp2f1_continued(c.p, z, 1e-13);
    double sampled = 0.0;
    switch (lim.kind) {
      case LimitKind::Finite:
        sampled = f;
        break;
      case LimitKind::PowerDivergent:
        sampled = f * std::pow(eps, -*lim.exponent);
        break;
      case LimitKind::LogDivergent: {
        // F = K ln(1-z) + C + o(1); the difference of two samples removes C
        const double eps2 = 10 * eps;
        const double f2 = hyp2f1_continued(c.p, 1 - eps2, 1e-13);
        sampled = (f - f2) / (std::log(eps) - std::log(eps2));
        notes.push_back(fmt::format("{} raw F/ln(1-z) = {:.4f}", tag, f / std::log(eps)));
        break;
      }
    }
    const double err = rel(sampled, lim.value);
    o.require(err <= 1e-3, fmt::format("{} sampled {} vs {} (rel {:.3g})", tag, sampled, lim.value, err));
    notes.push_back(fmt::format("{} {} rel {:.1e}", tag, to_string(lim.kind), err));
  }
  if (o.pass) {
    for (const auto& n : notes) o.detail += (o.detail.empty() ? "" : "; ") + n;
  }
  return o;
}

const std::vector<Params>& extremal_grid() {
  static const std::vector<Params> grid = [] {
    std::vector<Params> g;
    for (int n = 3; n <= 6; ++n)
      for (double beta : {2.0, 2.5, (n + 2) / 2.0, n - 0.5}) g.push_back({n, beta});
    return g;
  }();
  return grid;
}

Outcome extremal_consistency() {
  Outcome o;
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> log_rho(std::log(0.1), std::log(10.0)), theta(0.01, half_pi - 0.02);
  double worst_ode = 0, worst_bc = 0, worst_dt = 0, worst_pde = 0;
  for (const Params& p : extremal_grid()) {
    const ExtremalProfile e(p);
    std::vector<double> th;
    for (int i = 1; i <= 200; ++i) th.push_back((half_pi - 0.1) * i / 200);
    const auto ode = integrate_profile(p, e.alpha(), th, 1e-13);
    for (std::size_t i = 0; i < th.size(); ++i) worst_ode = std::max(worst_ode, std::abs(f_theta(e, th[i]) - ode[i]));
    for (double rho : {0.01, 1.0, 100.0}) {
      const PolarPoint at{rho, 0.0};
      worst_bc = std::max(worst_bc, rel(phi(e, at), std::pow(rho, 1 - p.n / 2.0)));
      worst_dt = std::max(worst_dt, rel(grad_phi(e, at).d_t(at), -optimal_constant(p) * std::pow(rho, -p.n / 2.0)));
    }
    for (int i = 0; i < 50; ++i) {
      const PolarPoint at{std::exp(log_rho(rng)), theta(rng)};
      const double scale = std::abs(phi(e, at)) / (at.rho * at.rho);
      worst_pde = std::max(worst_pde, std::abs(pde_residual(e, at, 1e-3)) / scale);
    }
  }
  o.require(worst_ode <= 1e-8, fmt::format("series vs ODE {:.3g}", worst_ode));
  o.require(worst_bc <= 1e-13, fmt::format("phi(x,0) rel error {:.3g}", worst_bc));
  o.require(worst_dt <= 1e-10, fmt::format("phi_t(x,0) rel error {:.3g}", worst_dt));
  o.require(worst_pde <= 1e-5, fmt::format("PDE residual {:.3g}", worst_pde));
  if (o.pass)
    o.detail = fmt::format("series-ODE {:.1e}, phi(x,0) {:.1e}, phi_t(x,0) {:.1e}, PDE residual {:.1e} ({} pairs)",
                           worst_ode, worst_bc, worst_dt, worst_pde, extremal_grid().size());
  return o;
}

Outcome calibration() {
  Outcome o;
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> log_rho(std::log(0.1), std::log(10.0)), theta(0.05, 1.45), v(0.1, 5.0);
  double worst = 0.0;
  bool zero_exact = true;
  for (const Params p : {Params{3, 2}, Params{4, 3}, Params{5, 3.5}, Params{6, 2.5}}) {
    const CalibrationField c(p);
    std::vector<FieldSample> pts;
    for (int i = 0; i < 50; ++i) {
      const double rho = std::exp(log_rho(rng)), th = theta(rng);
      pts.push_back({rho * std::cos(th), rho * std::sin(th), v(rng)});
    }
    worst = std::max(worst, divergence_check(c, pts, 1e-4));
    for (const auto& s : pts) {
      const auto f = c.field(s.r, s.t, 0.0);
      zero_exact = zero_exact && f[0] == 0.0 && f[1] == 0.0 && f[2] == 0.0;
    }
  }
  o.require(worst <= 1e-5, fmt::format("normalized divergence {:.3g}", worst));
  o.require(zero_exact, "F(.,.,0) not identically zero");
  if (o.pass) o.detail = fmt::format("max normalized divergence {:.2e}; F(.,.,0) = 0 exactly", worst);
  return o;
}

Outcome fluxes() {
  Outcome o;
  double worst_sigma = 0.0, worst_sphere = 0.0;
  for (const Params p : {Params{3, 2}, Params{4, 3}, Params{5, 3.5}, Params{6, 2.5}}) {
    const QuadratureSpec spec;
    for (const auto& u : generate_family(Family::Bump, 10, 71, p.n)) {
      const double tr = trace_term(u, p.n, spec).value;
      worst_sigma = std::max(worst_sigma, rel(flux_sigma1(u, p, spec).value, optimal_constant(p) * tr));
    }
    const CalibrationField c(p);
    const double ref = sphere_flux(c, 1.0).value;
    for (double rho : {0.1, 10.0}) worst_sphere = std::max(worst_sphere, rel(sphere_flux(c, rho).value, ref));
  }
  o.require(worst_sigma <= 1e-7, fmt::format("flux_sigma1 / (H trace) - 1 = {:.3g}", worst_sigma));
  o.require(worst_sphere <= 1e-8, fmt::format("sphere flux spread {:.3g}", worst_sphere));
  if (o.pass) o.detail = fmt::format("sigma1 rel {:.1e}, sphere flux spread {:.1e}", worst_sigma, worst_sphere);
  return o;
}

Outcome certification() {
  Outcome o;
  QuadratureSpec spec;
  spec.rel_tol = 1e-9;
  double min_margin = 1e300;
  int total = 0;
  for (const Params p : {Params{3, 2}, Params{4, 2}, Params{4, 3}, Params{5, 3.5}, Params{6, 2.5}}) {
    const auto funcs = generate_family(Family::Bump, 100, 20240917, p.n);
    for (std::size_t i = 0; i < funcs.size(); ++i) {
      const auto rep = verify_inequality(funcs[i], p, spec);
      ++total;
      min_margin = std::min(min_margin, rep.margin);
      o.require(rep.pass, fmt::format("(n={}, beta={}) bump #{} margin {} < -{}", p.n, p.beta, i, rep.margin,
                                      rep.quadrature_error));
    }
  }
  if (o.pass) o.detail = fmt::format("{} reports pass, smallest margin {:.4g}", total, min_margin);
  return o;
}

Outcome optimality() {
  Outcome o;
  const Params p{4, 3};
  const double H = optimal_constant(p);
  const auto res = optimality_sweep(p, {{1e-2, 1e2}, {1e-4, 1e4}, {1e-6, 1e6}}, {});
  std::string rows;
  for (const auto& w : res)
    rows += fmt::format(" [k={:.0f}: gap {:.2e}, gap*log {:.2e}, fluxes {:.6f}/{:.6f}]", std::log10(w.window.R),
                        w.gap, w.gap_times_log, w.inner_flux, w.outer_flux);
  bool positive = true, decreasing = true;
  for (std::size_t i = 0; i < res.size(); ++i) {
    positive = positive && res[i].gap > std::max(res[i].quadrature_error, 1e-12);
    if (i > 0) decreasing = decreasing && res[i].gap < res[i - 1].gap;
  }
  double lo = 1e300, hi = -1e300;
  for (const auto& w : res) {
    lo = std::min(lo, w.gap_times_log);
    hi = std::max(hi, w.gap_times_log);
  }
  const bool constant = lo > 0 && (hi - lo) / lo <= 0.1;
  o.require(positive, "gap not positive beyond quadrature error");
  o.require(decreasing, "gap not strictly decreasing");
  o.require(constant, "gap*ln(R/r) not constant within 10%");
  o.detail += fmt::format("{}(H = {})", o.detail.empty() ? "" : "; ", H) + rows;
  return o;
}

Outcome harmonic() {
  Outcome o;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> log_rho(std::log(0.1), std::log(10.0)), theta(0.0, half_pi - 1e-3);
  std::string summary;
  for (int n : {3, 4, 5}) {
    const ExtremalProfile e({n, 2});
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < 20; ++i) {
      const PolarPoint at{std::exp(log_rho(rng)), theta(rng)};
      const double ratio = harmonic_rep(n, at) / phi(e, at);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    const double g = std::tgamma((n - 2) / 4.0);
    const double oracle = g * g / (2 * std::tgamma((n - 2) / 2.0));
    const double spread = (hi - lo) / lo;
    const double err = rel(0.5 * (lo + hi), oracle);
    o.require(spread <= 1e-6, fmt::format("n={} spread {:.3g}", n, spread));
    o.require(err <= 1e-8, fmt::format("n={} constant {} vs {}", n, 0.5 * (lo + hi), oracle));
    summary += fmt::format("{}n={}: spread {:.1e}, const rel {:.1e}", summary.empty() ? "" : "; ", n, spread, err);
  }
  if (o.pass) o.detail = summary;
  return o;
}

Outcome escobar() {
  Outcome o;
  std::string summary;
  for (int n : {3, 4}) {
    double lo = 1e300, hi = -1e300, worst = 0;
    for (double a : {0.5, 1.0, 2.0}) {
      const auto chk = escobar_check(a, n, escobar_spec(a));
      const double ratio = chk.lhs / chk.rhs;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      worst = std::max(worst, std::abs(ratio - 1));
    }
    o.require(worst <= 1e-5, fmt::format("n={} |lhs/rhs - 1| = {:.3g}", n, worst));
    o.require(hi - lo <= 1e-6, fmt::format("n={} a-spread {:.3g}", n, hi - lo));
    summary += fmt::format("{}n={}: |lhs/rhs-1| {:.1e}, spread {:.1e}", summary.empty() ? "" : "; ", n, worst, hi - lo);
  }
  if (o.pass) o.detail = summary;
  return o;
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {"constant closed forms", 1, closed_forms},
      {"endpoint limits", 1, endpoint_limits},
      {"shooting recovers the constant", 30, shooting},
      {"hypergeometric behaviour at z=1", 5, trichotomy},
      {"extremal consistency", 30, extremal_consistency},
      {"calibration field divergence", 10, calibration},
      {"flux identities", 10, fluxes},
      {"inequality certification on random bumps", 120, certification},
      {"optimality convergence rate", 60, optimality},
      {"harmonic representation at beta=2", 30, harmonic},
      {"trace embedding extremal", 60, escobar},
  };
  return list;
}

bool run_one(std::size_t index) {
  const Criterion& c = criteria()[index];
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > c.budget_seconds) o.require(false, fmt::format("took {:.1f} s, budget {:.0f} s", secs, c.budget_seconds));
  fmt::print("criterion {:2d} {} {}: {} ({:.2f} s)\n", index + 1, o.pass ? "PASS" : "FAIL", c.name, o.detail, secs);
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      const int k = std::atoi(argv[++i]);
      if (k < 1 || k > int(criteria().size())) {
        fmt::print(stderr, "criterion must be 1..{}\n", criteria().size());
        return 2;
      }
      selected.push_back(std::size_t(k - 1));
    } else {
      fmt::print(stderr, "usage: acceptance [--criterion N]...\n");
      return 2;
    }
  }
  if (selected.empty())
    for (std::size_t i = 0; i < criteria().size(); ++i) selected.push_back(i);
  int failed = 0;
  for (std::size_t i : selected) failed += run_one(i) ? 0 : 1;
  return failed ? 1 : 0;
}
