#pragma once

// Adaptive Dormand-Prince 5(4) stepping for small fixed-size systems.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>

namespace hk::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  double initial_step = 1e-4;
  std::size_t max_steps = 1000000;
};

struct Stats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

/// Integrates y' = rhs(t, y) from t0 to t1 (either direction) and returns y(t1).
template <std::size_t N, class Rhs>
State<N> integrate(Rhs&& rhs, double t0, State<N> y, double t1, const Options& opt = {},
                   Stats* stats = nullptr) {
  // Dormand-Prince tableau (Hairer, Norsett & Wanner, Table 5.2).
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  if (t0 == t1) return y;
  const double dir = t1 > t0 ? 1.0 : -1.0;
  double h = dir * std::min(std::abs(opt.initial_step), std::abs(t1 - t0));
  double t = t0;
  State<N> k1 = rhs(t, y);
  std::size_t steps = 0;

  auto axpy = [](const State<N>& base, std::initializer_list<std::pair<double, const State<N>*>> terms,
                 double step) {
    State<N> out = base;
    for (const auto& [coef, k] : terms)
      for (std::size_t i = 0; i < N; ++i) out[i] += step * coef * (*k)[i];
    return out;
  };

  while (dir * (t1 - t) > 0) {
    if (++steps > opt.max_steps) throw std::runtime_error("ode::integrate: step budget exhausted");
    if (dir * (t + h - t1) > 0) h = t1 - t;

    const State<N> k2 = rhs(t + c2 * h, axpy(y, {{a21, &k1}}, h));
    const State<N> k3 = rhs(t + c3 * h, axpy(y, {{a31, &k1}, {a32, &k2}}, h));
    const State<N> k4 = rhs(t + c4 * h, axpy(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h));
    const State<N> k5 =
        rhs(t + c5 * h, axpy(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h));
    const State<N> k6 = rhs(
        t + h, axpy(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h));
    const State<N> y_new =
        axpy(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
    const State<N> k7 = rhs(t + h, y_new);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err = std::max(err, std::abs(e) / scale);
    }

    if (!std::isfinite(err)) {
      h *= 0.25;
      if (stats) ++stats->rejected;
      continue;
    }
    if (err <= 1.0) {
      t += h;
      y = y_new;
      k1 = k7;  // FSAL
      if (stats) ++stats->accepted;
    } else if (stats) {
      ++stats->rejected;
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
    if (std::abs(h) < 1e-15 * std::max(1.0, std::abs(t)))
      throw std::runtime_error("ode::integrate: step size underflow");
  }
  return y;
}

}  // namespace hk::ode
