#pragma once

// Numerical integration over the half-space {(x, t) : x in R^{n-1}, t > 0} for
// integrands depending on r = |x| and t only.
//
// Polar coordinates: rho = sqrt(r^2 + t^2), theta = atan(t / r) in [0, pi/2].
// Volume element: (n-1) w_{n-1} rho^{n-1} cos^{n-2}(theta) d(rho) d(theta).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "hardy_kato/constants.hpp"
#include "hardy_kato/errors.hpp"

namespace hk {

/// A value together with its estimated absolute error.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

struct QuadratureSpec {
  double r_min = 1e-4;      ///< inner truncation radius
  double r_max = 1e4;       ///< outer truncation radius
  int nodes_radial = 32;    ///< radial nodes per decade
  int nodes_angular = 64;   ///< angular nodes on [0, pi/2]
  double rel_tol = 1e-9;
  int max_refinements = 6;  ///< number of panel doublings allowed

  void validate() const;

  /// Same resolution restricted to [lo, hi] intersected with [r_min, r_max].
  QuadratureSpec clipped(double lo, double hi) const;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int order);

/// The 16-point rule used for every panel.
const GaussRule& panel_rule();

/// Globally adaptive Gauss-Kronrod (7-15) integration of f over [a, b].
/// Throws ToleranceError if max_intervals is exhausted first.
Estimate integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                            double rel_tol, double abs_tol = 0.0, int max_intervals = 2000);

namespace detail {

inline double sphere_measure_factor(int n) { return (n - 1) * unit_ball_volume(n - 1); }

// Tensor Gauss-Legendre sum with log-spaced radial panels; `level` doublings.
template <std::size_t K, class F>
std::array<double, K> halfspace_sum(const F& g, const QuadratureSpec& spec, int n, int level) {
  const GaussRule& rule = panel_rule();
  const int per_panel = int(rule.nodes.size());
  const double s_lo = std::log(spec.r_min);
  const double s_hi = std::log(spec.r_max);
  const double decades = (s_hi - s_lo) / std::log(10.0);
  const int base_r = std::max(1, int(std::ceil(decades * spec.nodes_radial / per_panel)));
  const int base_a = std::max(1, int(std::ceil(double(spec.nodes_angular) / per_panel)));
  const int panels_r = base_r << level;
  const int panels_a = base_a << level;
  const double hs = (s_hi - s_lo) / panels_r;
  const double ha = (std::numbers::pi / 2) / panels_a;

  // angular nodes, weights and cos^{n-2}
  std::vector<double> th, cth, sth, wa;
  th.reserve(std::size_t(panels_a) * per_panel);
  for (int pa = 0; pa < panels_a; ++pa) {
    for (int i = 0; i < per_panel; ++i) {
      const double theta = ha * (pa + 0.5 * (rule.nodes[i] + 1.0));
      th.push_back(theta);
      cth.push_back(std::cos(theta));
      sth.push_back(std::sin(theta));
      wa.push_back(0.5 * ha * rule.weights[i] * std::pow(std::cos(theta), n - 2));
    }
  }

  std::array<double, K> total{};
  for (int pr = 0; pr < panels_r; ++pr) {
    std::array<double, K> panel{};
    for (int i = 0; i < per_panel; ++i) {
      const double s = s_lo + hs * (pr + 0.5 * (rule.nodes[i] + 1.0));
      const double rho = std::exp(s);
      // d(rho) = rho ds, so the radial weight carries rho^n
      const double wr = 0.5 * hs * rule.weights[i] * std::pow(rho, n);
      std::array<double, K> ring{};
      for (std::size_t j = 0; j < th.size(); ++j) {
        const std::array<double, K> v = g(rho * cth[j], rho * sth[j]);
        for (std::size_t k = 0; k < K; ++k) ring[k] += wa[j] * v[k];
      }
      for (std::size_t k = 0; k < K; ++k) panel[k] += wr * ring[k];
    }
    for (std::size_t k = 0; k < K; ++k) total[k] += panel[k];
  }
  const double factor = sphere_measure_factor(n);
  for (auto& v : total) v *= factor;
  return total;
}

}  // namespace detail

/// Integrates K axisymmetric fields g(r, t) -> std::array<double, K> over the
/// truncated half-space r_min <= rho <= r_max, doubling panels until two
/// successive levels agree to rel_tol in every component.
template <std::size_t K, class F>
std::array<Estimate, K> integrate_halfspace_multi(const F& g, const QuadratureSpec& spec, int n) {
  spec.validate();
  std::array<double, K> prev = detail::halfspace_sum<K>(g, spec, n, 0);
  std::array<Estimate, K> out{};
  for (int level = 1; level <= spec.max_refinements; ++level) {
    const std::array<double, K> cur = detail::halfspace_sum<K>(g, spec, n, level);
    bool converged = true;
    for (std::size_t k = 0; k < K; ++k) {
      const double diff = std::abs(cur[k] - prev[k]);
      out[k] = {cur[k], diff};
      if (diff > spec.rel_tol * std::abs(cur[k]) && diff > std::numeric_limits<double>::min())
        converged = false;
    }
    if (converged) return out;
    prev = cur;
  }
  double worst = 0.0;
  for (const auto& e : out) worst = std::max(worst, e.error / std::max(std::abs(e.value), 1e-300));
  throw ToleranceError("integrate_halfspace: tolerance not met after " +
                           std::to_string(spec.max_refinements) + " refinements (relative error " +
                           std::to_string(worst) + ")",
                       out[0].value, out[0].error);
}

/// Scalar form of integrate_halfspace_multi.
Estimate integrate_halfspace(const std::function<double(double, double)>& g,
                             const QuadratureSpec& spec, int n);

/// (n-1) w_{n-1} \int_lo^hi g(r) r^{n-2} dr, the integral over the annulus
/// lo < |x| < hi of the boundary hyperplane. lo may be 0.
Estimate integrate_boundary(const std::function<double(double)>& g, double lo, double hi, int n,
                            double rel_tol = 1e-12);

/// (n-1) w_{n-1} rho^{n-1} \int_0^{pi/2} g(theta) cos^{n-2}(theta) d(theta), the
/// integral over the upper half of the sphere of radius rho.
Estimate integrate_hemisphere(const std::function<double(double)>& g, double rho, int n,
                              double rel_tol = 1e-12, int nodes = 64, int max_refinements = 8);

}  // namespace hk
