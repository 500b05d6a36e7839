#include "hardy_kato/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "hardy_kato/errors.hpp"
#include "hardy_kato/ode.hpp"

namespace hk {
namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos approximation with g = 7, n = 9 (coefficients of P. Godfrey, as
// tabulated in Press et al. and reproduced in most numerical libraries).
// Relative accuracy of Gamma is about 1e-15 for Re(x) > 1/2.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_ln_gamma(double x) {
  // valid for x >= 1/2
  const double xm1 = x - 1.0;
  double series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) series += kLanczos[i] / (xm1 + double(i));
  const double t = xm1 + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (xm1 + 0.5) * std::log(t) - t + std::log(series);
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::nearbyint(x); }

// log|Gamma(x)| and sign, for any non-pole x.
double log_abs_gamma(double x, int& sign) {
  if (is_nonpositive_integer(x))
    throw PoleError("Gamma pole at nonpositive integer " + std::to_string(x));
  if (x > 0.0) {
    sign = 1;
    return ln_gamma(x);
  }
  const double s = std::sin(kPi * x);
  sign = s > 0.0 ? 1 : -1;
  return std::log(kPi) - std::log(std::abs(s)) - ln_gamma(1.0 - x);
}

// prod Gamma(num_i) / prod Gamma(den_j) evaluated in log space.
template <std::size_t N, std::size_t M>
double gamma_ratio(const std::array<double, N>& num, const std::array<double, M>& den) {
  double log_mag = 0.0;
  int sign = 1;
  for (double x : num) {
    int s = 1;
    log_mag += log_abs_gamma(x, s);
    sign *= s;
  }
  for (double x : den) {
    int s = 1;
    log_mag -= log_abs_gamma(x, s);
    sign *= s;
  }
  return sign * std::exp(log_mag);
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("ln_gamma: argument must be positive, got " + std::to_string(x));
  if (x < 0.5) {
    // reflection keeps the Lanczos sum away from its poles near 0
    return std::log(kPi / std::sin(kPi * x)) - lanczos_ln_gamma(1.0 - x);
  }
  return lanczos_ln_gamma(x);
}

double gamma_function(double x) {
  int sign = 1;
  const double log_mag = log_abs_gamma(x, sign);
  return sign * std::exp(log_mag);
}

double beta(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) throw DomainError("beta: arguments must be positive");
  return std::exp(ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q));
}

void Hyp2F1Params::validate() const {
  if (is_nonpositive_integer(c))
    throw DomainError("hyp2f1: c must not be a nonpositive integer, got " + std::to_string(c));
}

double hyp2f1(const Hyp2F1Params& p, double z, const SeriesOptions& opt) {
  p.validate();
  if (!(z >= 0.0 && z < 1.0)) throw DomainError("hyp2f1: z must lie in [0, 1)");
  double term = 1.0;
  double sum = 1.0;
  for (std::size_t k = 0; k < opt.max_terms; ++k) {
    const double kk = double(k);
    term *= (p.a + kk) * (p.b + kk) / ((p.c + kk) * (kk + 1.0)) * z;
    sum += term;
    if (std::abs(term) < opt.rel_tol * std::abs(sum)) return sum;
  }
  throw ConvergenceError("hyp2f1: series did not converge within " +
                             std::to_string(opt.max_terms) + " terms at z=" + std::to_string(z),
                         sum, opt.max_terms);
}

double hyp2f1_derivative(const Hyp2F1Params& p, double z, const SeriesOptions& opt) {
  p.validate();
  return p.a * p.b / p.c * hyp2f1({p.a + 1.0, p.b + 1.0, p.c + 1.0}, z, opt);
}

double hyp2f1_continued(const Hyp2F1Params& p, double z, double rel_tol) {
  constexpr double kSwitch = 0.5;
  if (z <= kSwitch) return hyp2f1(p, z);
  if (!(z < 1.0)) throw DomainError("hyp2f1_continued: z must lie in [0, 1)");

  // With 1 - z = exp(-s), y(s) = F(z(s)) satisfies
  //   z y'' + [c - (a + b) z] y' - ab (1 - z) y = 0.
  const double ab = p.a * p.b;
  const double apb = p.a + p.b;
  auto rhs = [&](double s, const ode::State<2>& y) -> ode::State<2> {
    const double one_minus_z = std::exp(-s);
    const double zz = -std::expm1(-s);
    return {y[1], (ab * one_minus_z * y[0] - (p.c - apb * zz) * y[1]) / zz};
  };
  const double s0 = std::log(2.0);
  const double s1 = -std::log1p(-z);
  ode::State<2> y0 = {hyp2f1(p, kSwitch), hyp2f1_derivative(p, kSwitch) * (1.0 - kSwitch)};
  ode::Options opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = rel_tol * 1e-3;
  opt.initial_step = 1e-3;
  return ode::integrate<2>(rhs, s0, y0, s1, opt)[0];
}

std::string_view to_string(LimitKind kind) {
  switch (kind) {
    case LimitKind::Finite:
      return "finite";
    case LimitKind::LogDivergent:
      return "log-divergent";
    case LimitKind::PowerDivergent:
      return "power-divergent";
  }
  return "unknown";
}

Hyp2F1Limit hyp2f1_at_one(const Hyp2F1Params& p) {
  p.validate();
  if (!(p.a > 0.0) || !(p.b > 0.0)) throw DomainError("hyp2f1_at_one: requires a, b > 0");
  const double s = p.c - p.a - p.b;
  const double zero_tol = 1e-14 * std::max({1.0, std::abs(p.a), std::abs(p.b), std::abs(p.c)});
  if (std::abs(s) <= zero_tol) {
    return {LimitKind::LogDivergent,
            -gamma_ratio(std::array{p.a + p.b}, std::array{p.a, p.b}), std::nullopt};
  }
  if (s > 0.0) {
    return {LimitKind::Finite,
            gamma_ratio(std::array{p.c, s}, std::array{p.c - p.a, p.c - p.b}), std::nullopt};
  }
  return {LimitKind::PowerDivergent,
          gamma_ratio(std::array{p.c, -s}, std::array{p.a, p.b}), s};
}

}  // namespace hk
