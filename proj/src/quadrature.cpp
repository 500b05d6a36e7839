#include "hardy_kato/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

namespace hk {
namespace {

// QUADPACK qk15 abscissae and weights (Piessens et al., 1983).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment kronrod15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  return {a, b, resk * half, std::abs((resk - resg) * half)};
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(r_min > 0.0) || !(r_max > r_min))
    throw DomainError("QuadratureSpec: need 0 < r_min < r_max");
  if (nodes_radial < 8 || nodes_angular < 8)
    throw DomainError("QuadratureSpec: node counts must be >= 8");
  if (!(rel_tol > 0.0)) throw DomainError("QuadratureSpec: rel_tol must be positive");
  if (max_refinements < 1) throw DomainError("QuadratureSpec: max_refinements must be >= 1");
}

QuadratureSpec QuadratureSpec::clipped(double lo, double hi) const {
  QuadratureSpec out = *this;
  out.r_min = std::max(r_min, lo);
  out.r_max = std::min(r_max, hi);
  return out;
}

GaussRule gauss_legendre(int order) {
  if (order < 1) throw DomainError("gauss_legendre: order must be >= 1");
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    // Newton iteration from the Chebyshev-like initial guess
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order == 1 ? 1.0 : order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
  }
  return rule;
}

const GaussRule& panel_rule() {
  static const GaussRule rule = gauss_legendre(16);
  return rule;
}

Estimate integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                            double rel_tol, double abs_tol, int max_intervals) {
  if (a == b) return {};
  std::priority_queue<Segment> heap;
  Segment first = kronrod15(f, a, b);
  double total = first.value;
  double total_err = first.error;
  heap.push(first);
  int intervals = 1;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (intervals >= max_intervals)
      throw ToleranceError("integrate_adaptive: interval budget exhausted (achieved error " +
                               std::to_string(total_err) + ")",
                           total, total_err);
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = kronrod15(f, worst.a, mid);
    const Segment right = kronrod15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // resum to drop the accumulated update rounding
  double sum = 0.0, err = 0.0;
  std::vector<Segment> segs;
  while (!heap.empty()) {
    segs.push_back(heap.top());
    heap.pop();
  }
  std::sort(segs.begin(), segs.end(), [](const Segment& l, const Segment& r) { return l.a < r.a; });
  for (const auto& s : segs) {
    sum += s.value;
    err += s.error;
  }
  return {sum, err};
}

Estimate integrate_halfspace(const std::function<double(double, double)>& g,
                             const QuadratureSpec& spec, int n) {
  auto wrapped = [&g](double r, double t) { return std::array<double, 1>{g(r, t)}; };
  return integrate_halfspace_multi<1>(wrapped, spec, n)[0];
}

Estimate integrate_boundary(const std::function<double(double)>& g, double lo, double hi, int n,
                            double rel_tol) {
  if (!(lo >= 0.0) || !(hi > lo)) throw DomainError("integrate_boundary: need 0 <= lo < hi");
  const double factor = detail::sphere_measure_factor(n);
  Estimate e;
  if (lo == 0.0) {
    e = integrate_adaptive([&](double r) { return g(r) * std::pow(r, n - 2); }, 0.0, hi, rel_tol);
  } else {
    // log variable: r^{n-2} dr = e^{(n-1)s} ds
    e = integrate_adaptive(
        [&](double s) {
          const double r = std::exp(s);
          return g(r) * std::pow(r, n - 1);
        },
        std::log(lo), std::log(hi), rel_tol);
  }
  return {factor * e.value, factor * e.error};
}

Estimate integrate_hemisphere(const std::function<double(double)>& g, double rho, int n,
                              double rel_tol, int nodes, int max_refinements) {
  if (!(rho > 0.0)) throw DomainError("integrate_hemisphere: rho must be positive");
  const GaussRule& rule = panel_rule();
  const int per_panel = int(rule.nodes.size());
  auto sum_at = [&](int panels) {
    const double h = (std::numbers::pi / 2) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
      double part = 0.0;
      for (int i = 0; i < per_panel; ++i) {
        const double theta = h * (p + 0.5 * (rule.nodes[i] + 1.0));
        part += rule.weights[i] * g(theta) * std::pow(std::cos(theta), n - 2);
      }
      total += 0.5 * h * part;
    }
    return total;
  };
  const double factor = detail::sphere_measure_factor(n) * std::pow(rho, n - 1);
  int panels = std::max(1, (nodes + per_panel - 1) / per_panel);
  double prev = sum_at(panels);
  double diff = 0.0;
  for (int level = 0; level < max_refinements; ++level) {
    panels *= 2;
    const double cur = sum_at(panels);
    diff = std::abs(cur - prev);
    if (diff <= rel_tol * std::abs(cur) || diff <= std::numeric_limits<double>::min())
      return {factor * cur, factor * diff};
    prev = cur;
  }
  throw ToleranceError("integrate_hemisphere: tolerance not met", factor * prev, factor * diff);
}

}  // namespace hk
