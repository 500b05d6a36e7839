#pragma once

// Candidate extremals phi(x, t) = rho^{1-n/2} f(theta) of the interpolated
// Hardy-Kato inequality, with f(theta) = w(sin^2 theta) and w a combination of
// Gauss hypergeometric functions.

#include <vector>

#include "hardy_kato/constants.hpp"
#include "hardy_kato/specfun.hpp"

namespace hk {

/// rho = sqrt(|x|^2 + t^2) > 0, theta = atan(t / |x|) in [0, pi/2].
struct PolarPoint {
  double rho;
  double theta;

  void validate() const;
  static PolarPoint from_cartesian(double r, double t);
  double r() const;  ///< |x|
  double t() const;
};

/// Extremal profile for a parameter pair, with the boundary slope
/// alpha = -H(n, beta) that makes the profile bounded at the axis.
class ExtremalProfile {
 public:
  explicit ExtremalProfile(const Params& params);

  const Params& params() const { return params_; }
  double alpha() const { return alpha_; }
  double constant() const { return -alpha_; }

  /// F((n+b)/4 - 1, (n-b)/4, 1/2; z): the even part of w.
  Hyp2F1Params even_part() const;
  /// F((n+b)/4 - 1/2, (n-b)/4 + 1/2, 3/2; z): multiplies alpha sqrt(z).
  Hyp2F1Params odd_part() const;
  /// F(a, b, a+b+1/2; 1-z) with (a, b) from even_part(): the solution regular at z = 1.
  Hyp2F1Params axis_part() const;
  /// F(a, b, a+b+1/2; 1), so that w(z) = F(a, b, a+b+1/2; 1-z) / axis_norm().
  double axis_norm() const { return axis_norm_; }

 private:
  Params params_;
  double alpha_;
  double axis_norm_;
};

/// w(z) for 0 <= z < 1. Sums the two-series form for z <= 1/2 and the
/// axis-regular form in 1 - z above; the two agree on their overlap.
double w_profile(const ExtremalProfile& e, double z);

/// The two-series form F_even(z) + alpha sqrt(z) F_odd(z) on its own. Slow and
/// cancellation-prone as z -> 1; throws ConvergenceError near the axis.
double w_profile_series(const ExtremalProfile& e, double z);

/// f(theta) = w(sin^2 theta), 0 <= theta < pi/2.
double f_theta(const ExtremalProfile& e, double theta);

/// f'(theta), 0 <= theta < pi/2; f'(0) = alpha.
double f_theta_derivative(const ExtremalProfile& e, double theta);

/// phi = rho^{-(n-2)/2} w(sin^2 theta).
double phi(const ExtremalProfile& e, const PolarPoint& p);

/// phi evaluated directly from the Cartesian closed form
///   rho^{-(n-2)/2} F_even(t^2/rho^2) - t H rho^{-n/2} F_odd(t^2/rho^2).
double phi_cartesian(const ExtremalProfile& e, double r, double t);

struct PolarGradient {
  double d_rho;             ///< d(phi)/d(rho)
  double d_theta_over_rho;  ///< (1/rho) d(phi)/d(theta)

  /// Components along |x| and t.
  double d_r(const PolarPoint& p) const;
  double d_t(const PolarPoint& p) const;
};

PolarGradient grad_phi(const ExtremalProfile& e, const PolarPoint& p);

/// Integrates f'' = (n-2) tan(theta) f' + [((n-2)^2 - (beta-2)^2)/4] f with
/// f(0) = 1, f'(0) = slope, and returns f at each requested angle
/// (angles must be nondecreasing and below pi/2).
std::vector<double> integrate_profile(const Params& params, double slope,
                                      const std::vector<double>& thetas, double rel_tol = 1e-12);

/// Critical initial slope separating profiles that blow up to +inf from
/// those that blow up to -inf at the axis, found by bisection on the sign of
/// cos^{n-2}(theta) f'(theta) at theta_max. Equals -H(n, beta) up to tol.
double shoot_alpha(const Params& params, double theta_max, double tol);

/// \int_0^inf a^{n/2-2} / [(a + t)^2 + |x|^2]^{n/2-1} da, a harmonic function
/// in the half-space proportional to the beta = 2 extremal.
double harmonic_rep(int n, const PolarPoint& p, double rel_tol = 1e-13);

/// Second-order finite-difference value of
///   Laplace(phi) + ((beta-2)^2/4) phi / rho^2
/// using the axisymmetric Laplacian in (rho, theta). Radial differences are
/// taken in log(rho) with step h, angular ones with step h. Zero for the
/// exact extremal.
double pde_residual(const ExtremalProfile& e, const PolarPoint& p, double h = 1e-3);

}  // namespace hk
