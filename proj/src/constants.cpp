#include "hardy_kato/constants.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hardy_kato/errors.hpp"
#include "hardy_kato/specfun.hpp"

namespace hk {
namespace {

void require_dimension(int n) {
  if (n < 3) throw DomainError("dimension n must be >= 3, got " + std::to_string(n));
}

}  // namespace

void Params::validate() const {
  require_dimension(n);
  if (!(beta >= 2.0) || !(beta < double(n)))
    throw DomainError("beta must satisfy 2 <= beta < n (n=" + std::to_string(n) +
                      ", beta=" + std::to_string(beta) + ")");
}

double optimal_constant(const Params& p) {
  p.validate();
  const double s = (double(p.n) + p.beta) / 4.0;
  const double d = (double(p.n) - p.beta) / 4.0;
  // s - 1 >= 1/4 and d > 0 on the admissible range, so every argument is positive.
  return 2.0 * std::exp(ln_gamma(s - 0.5) + ln_gamma(d + 0.5) - ln_gamma(s - 1.0) - ln_gamma(d));
}

double kato_constant(int n) {
  require_dimension(n);
  return 2.0 * std::exp(2.0 * (ln_gamma(n / 4.0) - ln_gamma((n - 2) / 4.0)));
}

double hardy_constant(int n) {
  require_dimension(n);
  return (n - 2) * (n - 2) / 4.0;
}

double interior_coefficient(const Params& p) {
  p.validate();
  return (p.beta - 2.0) * (p.beta - 2.0) / 4.0;
}

double escobar_constant(int n) {
  require_dimension(n);
  return std::sqrt((n - 2) / 2.0) * std::pow(unit_sphere_area(n), 1.0 / (2.0 * (n - 1)));
}

double sobolev_constant(int n) {
  require_dimension(n);
  return std::sqrt(std::numbers::pi * n * (n - 2)) *
         std::exp((ln_gamma(n / 2.0) - ln_gamma(double(n))) / n);
}

double unit_ball_volume(int m) {
  if (m < 1) throw DomainError("unit_ball_volume: m must be >= 1");
  return std::exp(0.5 * m * std::log(std::numbers::pi) - ln_gamma(m / 2.0 + 1.0));
}

double unit_sphere_area(int m) { return m * unit_ball_volume(m); }

}  // namespace hk
