#include "hardy_kato/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hardy_kato/errors.hpp"

namespace hk {
namespace {

// Boundary integrals are one-dimensional and cheap; keep them well below the
// two-dimensional tolerance so they never dominate the error budget.
double boundary_tol(const QuadratureSpec& spec) { return std::min(1e-12, spec.rel_tol * 1e-2); }

struct Range {
  double lo, hi;
  bool empty() const { return !(hi > lo); }
};

Range integration_range(const TestFunction& u, const QuadratureSpec& spec) {
  return {std::max(spec.r_min, u.support().rho_min), std::min(spec.r_max, u.support().rho_max)};
}

Estimate boundary_integral(const TestFunction& u, const QuadratureSpec& spec, int n,
                           const std::function<double(double)>& weight) {
  const Range range = integration_range(u, spec);
  if (range.empty()) return {};
  return integrate_boundary(
      [&](double r) {
        const double v = u.value(r, 0.0);
        return v * v * weight(r);
      },
      range.lo, range.hi, n, boundary_tol(spec));
}

}  // namespace

InequalityTerms inequality_terms(const TestFunction& u, int n, const QuadratureSpec& spec) {
  spec.validate();
  InequalityTerms out;
  const Range range = integration_range(u, spec);
  if (!range.empty()) {
    const auto vol = integrate_halfspace_multi<2>(
        [&u](double r, double t) {
          const double v = u.value(r, t);
          const Gradient2 g = u.grad(r, t);
          return std::array<double, 2>{g.r * g.r + g.t * g.t, v * v / (r * r + t * t)};
        },
        spec.clipped(range.lo, range.hi), n);
    out.energy = vol[0];
    out.hardy = vol[1];
  }
  out.trace = boundary_integral(u, spec, n, [](double r) { return 1.0 / r; });
  return out;
}

Estimate energy(const TestFunction& u, int n, const QuadratureSpec& spec) {
  return inequality_terms(u, n, spec).energy;
}

Estimate hardy_term(const TestFunction& u, int n, const QuadratureSpec& spec) {
  return inequality_terms(u, n, spec).hardy;
}

Estimate trace_term(const TestFunction& u, int n, const QuadratureSpec& spec) {
  spec.validate();
  return boundary_integral(u, spec, n, [](double r) { return 1.0 / r; });
}

double functional_J(const TestFunction& u, const Params& p, const QuadratureSpec& spec) {
  const auto terms = inequality_terms(u, p.n, spec);
  return terms.energy.value - interior_coefficient(p) * terms.hardy.value;
}

InequalityReport verify_inequality(const TestFunction& u, const Params& p,
                                   const QuadratureSpec& spec) {
  p.validate();
  const auto terms = inequality_terms(u, p.n, spec);
  if (!(terms.trace.value > 0.0))
    throw DegenerateInputError("verify_inequality: trace term vanishes for '" + u.name() +
                               "'; the inequality is vacuous");
  InequalityReport rep;
  rep.params = p;
  rep.spec = spec;
  rep.energy = terms.energy.value;
  rep.hardy_term = terms.hardy.value;
  rep.trace_term = terms.trace.value;
  rep.constant = optimal_constant(p);
  rep.interior_coeff = interior_coefficient(p);
  rep.rayleigh = (rep.energy - rep.interior_coeff * rep.hardy_term) / rep.trace_term;
  rep.margin = rep.rayleigh - rep.constant;
  rep.quadrature_error =
      (terms.energy.error + rep.interior_coeff * terms.hardy.error) / rep.trace_term +
      std::abs(rep.rayleigh) * terms.trace.error / rep.trace_term;
  rep.pass = rep.margin >= -rep.quadrature_error;
  return rep;
}

std::array<double, 3> CalibrationField::field(double r, double t, double v) const {
  if (v == 0.0) return {0.0, 0.0, 0.0};
  const PolarPoint p = PolarPoint::from_cartesian(r, t);
  const double ph = phi(extremal_, p);
  const PolarGradient g = grad_phi(extremal_, p);
  const double pr = g.d_r(p);
  const double pt = g.d_t(p);
  const double k = v / ph;
  return {2.0 * k * pr, 2.0 * k * pt,
          k * k * (pr * pr + pt * pt) + interior_coefficient(params_) * v * v / (p.rho * p.rho)};
}

std::pair<double, double> mayer_slope(const CalibrationField& c, double r, double t, double v) {
  if (!(v >= 0.0)) throw DomainError("mayer_slope: v must be nonnegative");
  const PolarPoint p = PolarPoint::from_cartesian(r, t);
  const double k = v / phi(c.extremal(), p);
  const PolarGradient g = grad_phi(c.extremal(), p);
  return {k * g.d_r(p), k * g.d_t(p)};
}

double divergence_check(const CalibrationField& c, const std::vector<FieldSample>& pts, double h) {
  if (!(h > 0.0)) throw DomainError("divergence_check: h must be positive");
  const int n = c.params().n;
  double worst = 0.0;
  for (const auto& s : pts) {
    if (!(s.v >= 0.0)) throw DomainError("divergence_check: v must be nonnegative");
    if (s.v == 0.0) continue;  // F vanishes identically on v = 0
    const double rho = std::hypot(s.r, s.t);
    const double hx = h * rho;
    const double hv = h * s.v;
    if (s.r < 10.0 * hx || s.t < hx || !(rho > 0.0))
      throw DomainError("divergence_check: stencil leaves the domain at (" + std::to_string(s.r) +
                        ", " + std::to_string(s.t) + ")");

    const auto f0 = c.field(s.r, s.t, s.v);
    const double dFr = (c.field(s.r + hx, s.t, s.v)[0] - c.field(s.r - hx, s.t, s.v)[0]) / (2 * hx);
    const double dFt = (c.field(s.r, s.t + hx, s.v)[1] - c.field(s.r, s.t - hx, s.v)[1]) / (2 * hx);
    const double dFv = (c.field(s.r, s.t, s.v + hv)[2] - c.field(s.r, s.t, s.v - hv)[2]) / (2 * hv);
    // x-divergence of the radial field F_r x/|x| in R^{n-1}
    const double div = dFr + (n - 2) * f0[0] / s.r + dFt + dFv;
    const double norm = std::sqrt(f0[0] * f0[0] + f0[1] * f0[1] + f0[2] * f0[2]) / rho;
    worst = std::max(worst, std::abs(div) / norm);
  }
  return worst;
}

Estimate flux_sigma1(const TestFunction& u, const Params& p, const QuadratureSpec& spec) {
  spec.validate();
  const ExtremalProfile e(p);
  return boundary_integral(u, spec, p.n, [&e](double r) {
    const PolarPoint at{r, 0.0};
    return -grad_phi(e, at).d_t(at) / phi(e, at);
  });
}

Estimate sphere_flux(const CalibrationField& c, double rho, double rel_tol) {
  if (!(rho > 0.0)) throw DomainError("sphere_flux: rho must be positive");
  const int n = c.params().n;
  const Estimate hemi = integrate_hemisphere(
      [&](double theta) {
        const double v = phi(c.extremal(), {rho, theta});
        return v * v;
      },
      1.0, n, rel_tol);
  const double factor = (n - 2) / 4.0 * std::pow(rho, n - 2);
  return {factor * hemi.value, factor * hemi.error};
}

std::vector<WindowResult> optimality_sweep(const Params& p, const std::vector<Window>& windows,
                                           const QuadratureSpec& spec) {
  p.validate();
  const CalibrationField field(p);
  const ExtremalProfile& e = field.extremal();
  const double H = e.constant();
  const double c = interior_coefficient(p);
  std::vector<WindowResult> out;
  out.reserve(windows.size());
  for (const Window& w : windows) {
    if (!(w.r > 0.0) || !(w.R > w.r)) throw DomainError("optimality_sweep: windows need 0 < r < R");
    QuadratureSpec ws = spec;
    ws.r_min = w.r;
    ws.r_max = w.R;
    const auto vol = integrate_halfspace_multi<2>(
        [&e](double r, double t) {
          const PolarPoint pt = PolarPoint::from_cartesian(r, t);
          const double v = phi(e, pt);
          const PolarGradient g = grad_phi(e, pt);
          return std::array<double, 2>{g.d_rho * g.d_rho + g.d_theta_over_rho * g.d_theta_over_rho,
                                       v * v / (pt.rho * pt.rho)};
        },
        ws, p.n);
    const Estimate bnd = integrate_boundary(
        [&e](double r) {
          const double v = phi(e, {r, 0.0});
          return v * v / r;
        },
        w.r, w.R, p.n, boundary_tol(spec));

    WindowResult res;
    res.window = w;
    res.energy = vol[0].value;
    res.hardy = vol[1].value;
    res.boundary = bnd.value;
    res.ratio = (res.energy - c * res.hardy) / res.boundary;
    res.gap = res.ratio - H;
    res.gap_times_log = res.gap * std::log(w.R / w.r);
    res.inner_flux = sphere_flux(field, w.r).value;
    res.outer_flux = sphere_flux(field, w.R).value;
    res.quadrature_error = (vol[0].error + c * vol[1].error) / res.boundary +
                           std::abs(res.ratio) * bnd.error / res.boundary;
    out.push_back(res);
  }
  return out;
}

QuadratureSpec escobar_spec(double a) {
  QuadratureSpec s;
  s.r_min = 1e-6 * a;
  s.r_max = 1e9 * a;
  s.rel_tol = 1e-11;
  return s;
}

EscobarCheck escobar_check(double a, int n, const QuadratureSpec& spec) {
  if (!(a > 0.0)) throw DomainError("escobar_check: a must be positive");
  spec.validate();
  const TestFunction u = make_escobar(a, n);
  const double crit = 2.0 * (n - 1) / (n - 2.0);  // trace exponent 2(n-1)/(n-2)

  const auto vol = integrate_halfspace_multi<1>(
      [&u](double r, double t) {
        const Gradient2 g = u.grad(r, t);
        return std::array<double, 1>{g.r * g.r + g.t * g.t};
      },
      spec, n);
  const Estimate tr = integrate_boundary(
      [&u, crit](double r) { return std::pow(u.value(r, 0.0), crit); }, spec.r_min, spec.r_max, n,
      boundary_tol(spec));

  // Leading-order contributions beyond r_max: |grad u|^2 ~ (n-2)^2 rho^{2-2n},
  // u(x,0)^crit ~ |x|^{-2(n-1)}.
  const double R = spec.r_max;
  const double tail_energy = (n - 2) * std::pow(R, 2.0 - n) * unit_sphere_area(n) / 2.0;
  const double tail_trace = unit_ball_volume(n - 1) * std::pow(R, 1.0 - n);
  const double E = vol[0].value + tail_energy;
  const double T = tr.value + tail_trace;

  EscobarCheck out;
  out.lhs = escobar_constant(n) * std::pow(T, 1.0 / crit);
  out.rhs = std::sqrt(E);
  out.tail_estimate = std::max(tail_energy / E, tail_trace / T);
  out.quadrature_error = 0.5 * vol[0].error / E + tr.error / (crit * T);
  return out;
}

}  // namespace hk
