#include "hardy_kato/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hardy_kato/errors.hpp"
#include "hardy_kato/ode.hpp"
#include "hardy_kato/quadrature.hpp"

namespace hk {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

double hardy_gap(const Params& p) {
  const double n2 = p.n - 2.0;
  const double b2 = p.beta - 2.0;
  return (n2 * n2 - b2 * b2) / 4.0;
}

// Sturm-Liouville form of the profile equation: with q = cos^{n-2}(theta) f',
//   f' = q / cos^{n-2}(theta),  q' = k cos^{n-2}(theta) f.
// q stays bounded at the axis for every solution, and tends to zero there
// only for the bounded one.
struct ProfileSystem {
  int n;
  double k;
  ode::State<2> operator()(double theta, const ode::State<2>& y) const {
    const double w = std::pow(std::cos(theta), n - 2);
    return {y[1] / w, k * w * y[0]};
  }
};

ode::Options profile_ode_options(double rel_tol) {
  ode::Options opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = rel_tol * 1e-4;
  opt.initial_step = 1e-3;
  return opt;
}

}  // namespace

void PolarPoint::validate() const {
  if (!(rho > 0.0)) throw DomainError("PolarPoint: rho must be positive (singular at the origin)");
  if (!(theta >= 0.0) || !(theta <= kHalfPi))
    throw DomainError("PolarPoint: theta must lie in [0, pi/2]");
}

PolarPoint PolarPoint::from_cartesian(double r, double t) {
  return {std::hypot(r, t), std::atan2(t, r)};
}

double PolarPoint::r() const { return rho * std::cos(theta); }
double PolarPoint::t() const { return rho * std::sin(theta); }

ExtremalProfile::ExtremalProfile(const Params& params) : params_(params) {
  params_.validate();
  alpha_ = -optimal_constant(params_);
  const auto lim = hyp2f1_at_one(axis_part());
  axis_norm_ = lim.value;
}

Hyp2F1Params ExtremalProfile::even_part() const {
  return {(params_.n + params_.beta) / 4.0 - 1.0, (params_.n - params_.beta) / 4.0, 0.5};
}

Hyp2F1Params ExtremalProfile::odd_part() const {
  return {(params_.n + params_.beta) / 4.0 - 0.5, (params_.n - params_.beta) / 4.0 + 0.5, 1.5};
}

Hyp2F1Params ExtremalProfile::axis_part() const {
  const auto ev = even_part();
  return {ev.a, ev.b, ev.a + ev.b + 0.5};
}

double w_profile_series(const ExtremalProfile& e, double z) {
  if (!(z >= 0.0 && z < 1.0)) throw DomainError("w_profile: z must lie in [0, 1)");
  return hyp2f1(e.even_part(), z) + e.alpha() * std::sqrt(z) * hyp2f1(e.odd_part(), z);
}

double w_profile(const ExtremalProfile& e, double z) {
  if (!(z >= 0.0 && z < 1.0)) throw DomainError("w_profile: z must lie in [0, 1)");
  if (z <= 0.5) return w_profile_series(e, z);
  return hyp2f1(e.axis_part(), 1.0 - z) / e.axis_norm();
}

double f_theta(const ExtremalProfile& e, double theta) {
  if (!(theta >= 0.0 && theta < kHalfPi)) throw DomainError("f_theta: theta must lie in [0, pi/2)");
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  if (theta <= std::numbers::pi / 4) return w_profile_series(e, s * s);
  return hyp2f1(e.axis_part(), c * c) / e.axis_norm();
}

double f_theta_derivative(const ExtremalProfile& e, double theta) {
  if (!(theta >= 0.0 && theta < kHalfPi))
    throw DomainError("f_theta_derivative: theta must lie in [0, pi/2)");
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  if (theta <= std::numbers::pi / 4) {
    // d/dtheta [F_e(s^2) + alpha s F_o(s^2)]
    const double z = s * s;
    const double even = 2.0 * s * c * hyp2f1_derivative(e.even_part(), z);
    const double odd = c * hyp2f1(e.odd_part(), z) + 2.0 * z * c * hyp2f1_derivative(e.odd_part(), z);
    return even + e.alpha() * odd;
  }
  return -2.0 * s * c * hyp2f1_derivative(e.axis_part(), c * c) / e.axis_norm();
}

double phi(const ExtremalProfile& e, const PolarPoint& p) {
  p.validate();
  const int n = e.params().n;
  return std::pow(p.rho, -(n - 2) / 2.0) * f_theta(e, p.theta);
}

double phi_cartesian(const ExtremalProfile& e, double r, double t) {
  const double rho2 = r * r + t * t;
  if (!(rho2 > 0.0)) throw DomainError("phi_cartesian: singular at the origin");
  const int n = e.params().n;
  const double z = t * t / rho2;
  return hyp2f1(e.even_part(), z) / std::pow(rho2, (n - 2) / 4.0) -
         t * e.constant() / std::pow(rho2, n / 4.0) * hyp2f1(e.odd_part(), z);
}

double PolarGradient::d_r(const PolarPoint& p) const {
  return d_rho * std::cos(p.theta) - d_theta_over_rho * std::sin(p.theta);
}

double PolarGradient::d_t(const PolarPoint& p) const {
  return d_rho * std::sin(p.theta) + d_theta_over_rho * std::cos(p.theta);
}

PolarGradient grad_phi(const ExtremalProfile& e, const PolarPoint& p) {
  p.validate();
  const int n = e.params().n;
  const double scale = std::pow(p.rho, -n / 2.0);
  return {-(n - 2) / 2.0 * scale * f_theta(e, p.theta), scale * f_theta_derivative(e, p.theta)};
}

std::vector<double> integrate_profile(const Params& params, double slope,
                                      const std::vector<double>& thetas, double rel_tol) {
  params.validate();
  const ProfileSystem sys{params.n, hardy_gap(params)};
  const auto opt = profile_ode_options(rel_tol);
  std::vector<double> out;
  out.reserve(thetas.size());
  ode::State<2> y = {1.0, slope};
  double at = 0.0;
  for (double theta : thetas) {
    if (!(theta >= at) || !(theta < kHalfPi))
      throw DomainError("integrate_profile: angles must be nondecreasing in [0, pi/2)");
    y = ode::integrate<2>(sys, at, y, theta, opt);
    at = theta;
    out.push_back(y[0]);
  }
  return out;
}

double shoot_alpha(const Params& params, double theta_max, double tol) {
  params.validate();
  if (!(theta_max > kHalfPi - 0.1 && theta_max < kHalfPi))
    throw DomainError("shoot_alpha: theta_max must lie in (pi/2 - 0.1, pi/2)");
  if (!(tol > 0.0)) throw DomainError("shoot_alpha: tol must be positive");

  const ProfileSystem sys{params.n, hardy_gap(params)};
  const auto opt = profile_ode_options(1e-11);
  auto end_flux = [&](double slope) {
    return ode::integrate<2>(sys, 0.0, ode::State<2>{1.0, slope}, theta_max, opt)[1];
  };

  // |H| stays below n/2 on the admissible range, so [-n, 0] brackets it.
  double lo = -double(params.n);
  double hi = 0.0;
  double f_lo = end_flux(lo);
  double f_hi = end_flux(hi);
  if (!(f_lo * f_hi < 0.0))
    throw BracketError("shoot_alpha: endpoint behaviours do not differ in sign", lo, f_lo, hi, f_hi);

  for (int it = 0; it < 200 && hi - lo > 0.25 * tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double f_mid = end_flux(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double harmonic_rep(int n, const PolarPoint& p, double rel_tol) {
  if (n < 3) throw DomainError("harmonic_rep: n must be >= 3");
  p.validate();
  const double s = std::sin(p.theta);
  const double c = std::cos(p.theta);
  const double power = n / 2.0 - 1.0;
  // a = rho * sigma. On sigma in [0, 1] substitute sigma = u^2; on [1, inf)
  // substitute sigma = 1 / u^2. Both leave the smooth integrand
  // 2 u^{n-3} / D(u)^{n/2-1} on [0, 1].
  auto inner = [&](double u) {
    const double sigma = u * u;
    const double d = (sigma + s) * (sigma + s) + c * c;
    return 2.0 * std::pow(u, n - 3) / std::pow(d, power);
  };
  auto outer = [&](double u) {
    const double v = u * u;
    const double d = (1.0 + v * s) * (1.0 + v * s) + v * v * c * c;
    return 2.0 * std::pow(u, n - 3) / std::pow(d, power);
  };
  const Estimate a = integrate_adaptive(inner, 0.0, 1.0, rel_tol);
  const Estimate b = integrate_adaptive(outer, 0.0, 1.0, rel_tol);
  return std::pow(p.rho, 1.0 - n / 2.0) * (a.value + b.value);
}

double pde_residual(const ExtremalProfile& e, const PolarPoint& p, double h) {
  p.validate();
  if (!(h > 0.0)) throw DomainError("pde_residual: h must be positive");
  if (p.theta < h || kHalfPi - p.theta < 10.0 * h)
    throw DomainError("pde_residual: stencil leaves the domain (need h <= theta <= pi/2 - 10h)");
  const int n = e.params().n;
  const double c = interior_coefficient(e.params());
  auto at = [&](double rho, double theta) { return phi(e, {rho, theta}); };

  // radial derivatives through s = log(rho): phi_rho = phi_s / rho,
  // phi_rhorho = (phi_ss - phi_s) / rho^2
  const double u0 = at(p.rho, p.theta);
  const double u_sp = at(p.rho * std::exp(h), p.theta), u_sm = at(p.rho * std::exp(-h), p.theta);
  const double u_tp = at(p.rho, p.theta + h), u_tm = at(p.rho, p.theta - h);

  const double d_ss = (u_sp - 2.0 * u0 + u_sm) / (h * h);
  const double d_s = (u_sp - u_sm) / (2.0 * h);
  const double d_tt = (u_tp - 2.0 * u0 + u_tm) / (h * h);
  const double d_t = (u_tp - u_tm) / (2.0 * h);
  const double d_r = d_s / p.rho;
  const double d_rr = (d_ss - d_s) / (p.rho * p.rho);

  const double rho2 = p.rho * p.rho;
  const double laplacian =
      d_rr + (n - 1) / p.rho * d_r + (d_tt - (n - 2) * std::tan(p.theta) * d_t) / rho2;
  return laplacian + c * u0 / rho2;
}

}  // namespace hk
