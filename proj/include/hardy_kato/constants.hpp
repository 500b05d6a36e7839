#pragma once

// Sharp constants of the half-space trace/Hardy family.

namespace hk {

/// Dimension and interpolation parameter; valid when n >= 3 and 2 <= beta < n.
struct Params {
  int n = 3;
  double beta = 2.0;

  /// Throws DomainError if the pair is outside the admissible range.
  void validate() const;
};

/// H(n, beta): sharp constant of the boundary term,
///   2 G((n+b)/4 - 1/2) G((n-b)/4 + 1/2) / [G((n+b)/4 - 1) G((n-b)/4)].
/// Vanishes linearly as beta -> n; beta == n is a domain error.
double optimal_constant(const Params& p);

/// Kato constant 2 G(n/4)^2 / G((n-2)/4)^2, equal to H(n, 2).
double kato_constant(int n);

/// Hardy constant (n-2)^2 / 4.
double hardy_constant(int n);

/// Coefficient (beta-2)^2 / 4 of the interior Hardy term.
double interior_coefficient(const Params& p);

/// Sharp constant of the L^{2(n-1)/(n-2)} trace embedding,
///   ((n-2)/2)^{1/2} |S^{n-1}|^{1/(2(n-1))},
/// attained by [(a+t)^2 + |x|^2]^{1-n/2}.
double escobar_constant(int n);

/// Sobolev constant sqrt(pi n (n-2)) (G(n/2)/G(n))^{1/n}.
double sobolev_constant(int n);

/// Lebesgue measure of the unit ball in R^m.
double unit_ball_volume(int m);

/// Surface measure of the unit sphere S^{m-1} in R^m, i.e. m * unit_ball_volume(m).
double unit_sphere_area(int m);

}  // namespace hk
