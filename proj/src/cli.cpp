#include "hardy_kato/cli.hpp"

#include <fmt/format.h>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

#include "hardy_kato/errors.hpp"
#include "hardy_kato/extremal.hpp"
#include "hardy_kato/specfun.hpp"
#include "hardy_kato/verify.hpp"

namespace hk::cli {
namespace {

using json = nlohmann::ordered_json;

// shortest representation that reads back to the same double
std::string num(double v) { return fmt::format("{}", v); }

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  sink->set_pattern("[%l] %v");
  auto log = std::make_shared<spdlog::logger>("hk", sink);
  log->set_level(spdlog::level::warn);
  if (const char* env = std::getenv("HK_LOG")) {
    const auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to off; only accept it when asked for
    if (level != spdlog::level::off || std::string(env) == "off")
      log->set_level(level);
    else
      log->warn("HK_LOG='{}' not recognised, using 'warn'", env);
  }
  return log;
}

json spec_json(const QuadratureSpec& s) {
  return {{"r_min", s.r_min},
          {"r_max", s.r_max},
          {"nodes_radial", s.nodes_radial},
          {"nodes_angular", s.nodes_angular},
          {"rel_tol", s.rel_tol},
          {"max_refinements", s.max_refinements}};
}

json report_json(const InequalityReport& r) {
  return {{"energy", r.energy},
          {"hardy_term", r.hardy_term},
          {"trace_term", r.trace_term},
          {"constant", r.constant},
          {"interior_coeff", r.interior_coeff},
          {"rayleigh", r.rayleigh},
          {"margin", r.margin},
          {"quadrature_error", r.quadrature_error},
          {"params", {{"n", r.params.n}, {"beta", r.params.beta}}},
          {"spec", spec_json(r.spec)},
          {"pass", r.pass}};
}

struct Result {
  std::string text;
  int code = kOk;
};

Format format_or(const RunConfig& c, Format fallback) { return c.output_format.value_or(fallback); }

Result cmd_constant(const RunConfig& c) {
  const Params& p = c.params;
  const double H = optimal_constant(p);
  const double kato = kato_constant(p.n);
  const double hardy = hardy_constant(p.n);
  const double ic = interior_coefficient(p);
  if (c.output_format == Format::Json) {
    json j = {{"n", p.n}, {"beta", p.beta}, {"H", H}, {"kato", kato}, {"hardy", hardy}, {"interior_coeff", ic}};
    return {j.dump(2) + "\n"};
  }
  if (c.output_format == Format::Csv)
    return {fmt::format("n,beta,H,interior_coeff,kato,hardy\n{},{},{},{},{},{}\n", p.n, num(p.beta), num(H),
                        num(ic), num(kato), num(hardy))};
  return {fmt::format("n = {}\nbeta = {:.15g}\nH = {:.15g}\nkato = {:.15g}\nhardy = {:.15g}\ninterior_coeff = {:.15g}\n",
                      p.n, p.beta, H, kato, hardy, ic)};
}

std::vector<double> beta_grid(int n, double step) {
  // 2, 2 + step, ..., the last point below n; n - step when step divides n - 2
  int last = int(std::floor((n - 2) / step + 1e-9));
  if (2.0 + last * step >= n) --last;
  std::vector<double> out;
  for (int k = 0; k <= std::max(last, 0); ++k) out.push_back(2.0 + k * step);
  return out;
}

Result cmd_table(const RunConfig& c) {
  const Format f = format_or(c, Format::Csv);
  json rows = json::array();
  std::string csv = "n,beta,H,interior_coeff,kato,hardy\n";
  for (int n = c.n_min; n <= c.n_max; ++n) {
    for (double beta : beta_grid(n, c.beta_step)) {
      const Params p{n, beta};
      const double H = optimal_constant(p), ic = interior_coefficient(p);
      const double kato = kato_constant(n), hardy = hardy_constant(n);
      csv += fmt::format("{},{},{},{},{},{}\n", n, num(beta), num(H), num(ic), num(kato), num(hardy));
      rows.push_back({{"n", n}, {"beta", beta}, {"H", H}, {"interior_coeff", ic}, {"kato", kato}, {"hardy", hardy}});
    }
  }
  return {f == Format::Json ? rows.dump(2) + "\n" : csv};
}

Result cmd_extremal_eval(const RunConfig& c) {
  const ExtremalProfile e(c.params);
  std::vector<double> thetas = c.thetas;
  if (thetas.empty())
    for (int k = 0; k < c.points; ++k) thetas.push_back(std::numbers::pi / 2 * k / c.points);
  json rows = json::array();
  std::string csv = "rho,theta,phi,f,d_rho,d_theta_over_rho\n";
  for (double th : thetas) {
    const PolarPoint pt{c.rho, th};
    const double ph = phi(e, pt);
    const double f = f_theta(e, th);
    const PolarGradient g = grad_phi(e, pt);
    csv += fmt::format("{},{},{},{},{},{}\n", num(c.rho), num(th), num(ph), num(f), num(g.d_rho),
                       num(g.d_theta_over_rho));
    rows.push_back({{"rho", c.rho}, {"theta", th}, {"phi", ph}, {"f", f}, {"d_rho", g.d_rho},
                    {"d_theta_over_rho", g.d_theta_over_rho}});
  }
  return {format_or(c, Format::Csv) == Format::Json ? rows.dump(2) + "\n" : csv};
}

Result cmd_ode_shoot(const RunConfig& c, spdlog::logger& log) {
  const double alpha = shoot_alpha(c.params, c.theta_max, c.tol);
  const double formula = -optimal_constant(c.params);
  const double diff = alpha - formula;
  const bool ok = std::abs(diff) <= c.tol;
  if (!ok) log.error("|shooting - formula| = {} exceeds tol = {}", std::abs(diff), c.tol);
  std::string text;
  if (c.output_format == Format::Json) {
    json j = {{"n", c.params.n}, {"beta", c.params.beta}, {"alpha", alpha}, {"formula", formula},
              {"difference", diff}, {"tol", c.tol}, {"pass", ok}};
    text = j.dump(2) + "\n";
  } else {
    text = fmt::format("alpha = {}\nformula = {}\ndifference = {}\n", num(alpha), num(formula), num(diff));
  }
  return {text, ok ? kOk : kNumericalFailure};
}

Result cmd_verify(const RunConfig& c, spdlog::logger& log) {
  const Family fam = parse_family(c.family);
  const auto funcs = generate_family(fam, std::size_t(c.count), c.seed, c.params.n);
  json reports = json::array();
  std::string csv =
      "index,name,energy,hardy_term,trace_term,constant,interior_coeff,rayleigh,margin,quadrature_error,pass\n";
  int failures = 0;
  for (std::size_t i = 0; i < funcs.size(); ++i) {
    const InequalityReport r = verify_inequality(funcs[i], c.params, c.spec);
    log.debug("{} #{}: margin {} (error {})", funcs[i].name(), i, r.margin, r.quadrature_error);
    if (!r.pass) {
      ++failures;
      log.error("{} #{} FAILS: margin {} below -{}", funcs[i].name(), i, r.margin, r.quadrature_error);
    }
    reports.push_back(report_json(r));
    csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", i, funcs[i].name(), num(r.energy),
                       num(r.hardy_term), num(r.trace_term), num(r.constant), num(r.interior_coeff),
                       num(r.rayleigh), num(r.margin), num(r.quadrature_error), r.pass ? "true" : "false");
  }
  log.info("{} of {} reports pass", funcs.size() - failures, funcs.size());
  const std::string text = format_or(c, Format::Json) == Format::Json ? reports.dump(2) + "\n" : csv;
  return {text, failures ? kNumericalFailure : kOk};
}

Result cmd_optimality(const RunConfig& c) {
  std::vector<Window> windows;
  for (int k : c.window_exponents) windows.push_back({std::pow(10.0, -k), std::pow(10.0, k)});
  const auto res = optimality_sweep(c.params, windows, c.spec);
  json rows = json::array();
  std::string csv = "r,R,ratio,gap,gap_times_log\n";
  for (const auto& w : res) {
    csv += fmt::format("{},{},{},{},{}\n", num(w.window.r), num(w.window.R), num(w.ratio), num(w.gap),
                       num(w.gap_times_log));
    rows.push_back({{"r", w.window.r},
                    {"R", w.window.R},
                    {"ratio", w.ratio},
                    {"gap", w.gap},
                    {"gap_times_log", w.gap_times_log},
                    {"energy", w.energy},
                    {"hardy", w.hardy},
                    {"boundary", w.boundary},
                    {"inner_flux", w.inner_flux},
                    {"outer_flux", w.outer_flux},
                    {"quadrature_error", w.quadrature_error}});
  }
  return {format_or(c, Format::Csv) == Format::Json ? rows.dump(2) + "\n" : csv};
}

Result cmd_flux(const RunConfig& c) {
  const CalibrationField field(c.params);
  const double H = optimal_constant(c.params);
  const double reference = sphere_flux(field, 1.0).value;
  json rows = json::array();
  std::string csv = "quantity,argument,value,reference,relative_difference\n";
  auto add = [&](const char* what, const std::string& arg, double value, double ref) {
    const double d = (value - ref) / ref;
    csv += fmt::format("{},{},{},{},{}\n", what, arg, num(value), num(ref), num(d));
    rows.push_back({{"quantity", what}, {"argument", arg}, {"value", value}, {"reference", ref},
                    {"relative_difference", d}});
  };
  for (double rho : c.radii) add("sphere_flux", num(rho), sphere_flux(field, rho).value, reference);
  const auto funcs = generate_family(parse_family(c.family), std::size_t(c.count), c.seed, c.params.n);
  for (std::size_t i = 0; i < funcs.size(); ++i) {
    const double tr = trace_term(funcs[i], c.params.n, c.spec).value;
    if (!(tr > 0.0)) continue;
    add("flux_sigma1", std::to_string(i), flux_sigma1(funcs[i], c.params, c.spec).value, H * tr);
  }
  return {format_or(c, Format::Csv) == Format::Json ? rows.dump(2) + "\n" : csv};
}

Result cmd_specfun(const RunConfig& c) {
  json j = {{"function", c.function}};
  const Hyp2F1Params hp{c.a, c.b, c.c};
  if (c.function == "gamma") {
    j["value"] = gamma_function(c.x);
  } else if (c.function == "ln-gamma") {
    j["value"] = ln_gamma(c.x);
  } else if (c.function == "beta") {
    j["value"] = beta(c.p, c.q);
  } else if (c.function == "hyp2f1") {
    j["value"] = hyp2f1(hp, c.z);
  } else if (c.function == "hyp2f1-derivative") {
    j["value"] = hyp2f1_derivative(hp, c.z);
  } else if (c.function == "hyp2f1-continued") {
    j["value"] = hyp2f1_continued(hp, c.z);
  } else if (c.function == "hyp2f1-at-one") {
    const Hyp2F1Limit lim = hyp2f1_at_one(hp);
    j["kind"] = std::string(to_string(lim.kind));
    j["value"] = lim.value;
    if (lim.exponent) j["exponent"] = *lim.exponent;
  } else {
    throw DomainError("unknown function '" + c.function + "'");
  }
  if (c.output_format == Format::Json) return {j.dump(2) + "\n"};
  std::string text;
  for (const auto& [key, val] : j.items()) {
    if (key == "function") continue;
    text += key + " = " + (val.is_string() ? val.get<std::string>() : num(val.get<double>())) + "\n";
  }
  return {text};
}

Result dispatch(const RunConfig& c, spdlog::logger& log) {
  switch (c.command) {
    case Command::Constant:
      return cmd_constant(c);
    case Command::Table:
      return cmd_table(c);
    case Command::ExtremalEval:
      return cmd_extremal_eval(c);
    case Command::OdeShoot:
      return cmd_ode_shoot(c, log);
    case Command::Verify:
      return cmd_verify(c, log);
    case Command::Optimality:
      return cmd_optimality(c);
    case Command::Flux:
      return cmd_flux(c);
    case Command::Specfun:
      return cmd_specfun(c);
  }
  throw DomainError("no command");
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--n", c.params.n, "dimension n >= 3")->capture_default_str();
  sub->add_option("--beta", c.params.beta, "2 <= beta < n")->capture_default_str();
  sub->add_option("--r-min", c.spec.r_min, "inner truncation radius")->capture_default_str();
  sub->add_option("--r-max", c.spec.r_max, "outer truncation radius")->capture_default_str();
  sub->add_option("--rel-tol", c.spec.rel_tol, "quadrature relative tolerance")->capture_default_str();
  sub->add_option("--nodes-radial", c.spec.nodes_radial, "radial nodes per decade")->capture_default_str();
  sub->add_option("--nodes-angular", c.spec.nodes_angular, "angular nodes")->capture_default_str();
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
  sub->add_option("--format", c.output_format, "csv or json")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::Csv}, {"json", Format::Json}}));
  sub->add_option("--out", c.output_path, "write output to this file");
}

}  // namespace

void RunConfig::validate() const {
  if (command == Command::Table) {
    if (n_min < 3 || n_max < n_min) throw DomainError("table: need 3 <= n-min <= n-max");
    if (!(beta_step > 0.0)) throw DomainError("table: beta-step must be positive");
  }
  if (count < 0) throw DomainError("count must be nonnegative");
  if (points < 1) throw DomainError("points must be >= 1");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto log = make_logger(err);

  CLI::App app{"Sharp constants, extremals and numerical certification of the half-space Hardy-Kato trace inequality",
               "hkato"};
  app.set_config("--config", "", "key=value file with one [section] per subcommand");
  app.require_subcommand(1);

  struct Entry {
    Command command;
    const char* name;
    const char* help;
  };
  const Entry entries[] = {
      {Command::Constant, "constant", "H(n,beta) and related constants"},
      {Command::Table, "table", "constants over a grid of (n, beta)"},
      {Command::ExtremalEval, "extremal-eval", "extremal phi and its gradient at a set of angles"},
      {Command::OdeShoot, "ode-shoot", "recover -H(n,beta) by shooting on the profile equation"},
      {Command::Verify, "verify", "certify the inequality on a seeded test-function family"},
      {Command::Optimality, "optimality", "Rayleigh ratio of the extremal on growing half-annuli"},
      {Command::Flux, "flux", "sphere-flux and boundary-flux identities"},
      {Command::Specfun, "specfun", "evaluate a special function"},
  };
  // Each subcommand owns its settings, so one config section cannot leak
  // into another.
  std::map<std::string, RunConfig> cfgs;
  std::map<std::string, CLI::App*> subs;
  for (const Entry& e : entries) {
    RunConfig& c = cfgs[e.name];
    c.command = e.command;
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_common(sub, c);
    subs[e.name] = sub;
  }
  auto opt = [&](const char* cmd) -> std::pair<CLI::App*, RunConfig&> { return {subs[cmd], cfgs[cmd]}; };
  {
    auto [sub, c] = opt("table");
    sub->add_option("--n-min", c.n_min)->capture_default_str();
    sub->add_option("--n-max", c.n_max)->capture_default_str();
    sub->add_option("--beta-step", c.beta_step)->capture_default_str();
  }
  {
    auto [sub, c] = opt("extremal-eval");
    sub->add_option("--rho", c.rho)->capture_default_str();
    sub->add_option("--theta", c.thetas, "angles in [0, pi/2)")->delimiter(',');
    sub->add_option("--points", c.points, "evenly spaced angles when --theta is absent")->capture_default_str();
  }
  {
    auto [sub, c] = opt("ode-shoot");
    sub->add_option("--tol", c.tol)->capture_default_str();
    sub->add_option("--theta-max", c.theta_max)->capture_default_str();
  }
  for (const char* name : {"verify", "flux"}) {
    auto [sub, c] = opt(name);
    sub->add_option("--family", c.family, "bump, gaussian, escobar or zero-trace")->capture_default_str();
    sub->add_option("--count", c.count)->capture_default_str();
  }
  {
    auto [sub, c] = opt("flux");
    sub->add_option("--rho", c.radii, "sphere radii")->delimiter(',');
  }
  {
    auto [sub, c] = opt("optimality");
    sub->add_option("--k", c.window_exponents, "windows (10^-k, 10^k)")->delimiter(',');
  }
  {
    auto [sub, c] = opt("specfun");
    sub->add_option("--function", c.function,
                    "gamma, ln-gamma, beta, hyp2f1, hyp2f1-derivative, hyp2f1-continued or hyp2f1-at-one")
        ->capture_default_str();
    for (auto [flag, target] : {std::pair{"--x", &c.x}, {"--p", &c.p}, {"--q", &c.q}, {"--a", &c.a},
                                {"--b", &c.b}, {"--c", &c.c}, {"--z", &c.z}})
      sub->add_option(flag, *target)->capture_default_str();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }
  const RunConfig& cfg = cfgs.at(app.get_subcommands().front()->get_name());

  try {
    cfg.validate();
    cfg.spec.validate();
    log->debug("n={} beta={} seed={}", cfg.params.n, cfg.params.beta, cfg.seed);
    const Result res = dispatch(cfg, *log);
    if (cfg.output_path) {
      std::ofstream file(*cfg.output_path);
      if (!file) {
        log->error("cannot open '{}' for writing", *cfg.output_path);
        return kUsageError;
      }
      file << res.text;
    } else {
      out << res.text;
    }
    return res.code;
  } catch (const DomainError& e) {
    log->error("{}", e.what());
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    log->error("{}", e.what());
    return kUsageError;
  } catch (const BracketError& e) {
    log->error("{} (f({})={}, f({})={})", e.what(), e.lo(), e.lo_end(), e.hi(), e.hi_end());
    return kNumericalFailure;
  } catch (const std::exception& e) {
    log->error("{}", e.what());
    return kNumericalFailure;
  }
}

}  // namespace hk::cli
