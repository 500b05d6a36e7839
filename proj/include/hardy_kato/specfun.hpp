#pragma once

// Gamma/Beta functions and the Gauss hypergeometric series on [0, 1).

#include <cstddef>
#include <optional>
#include <string_view>

namespace hk {

/// log Gamma(x) for x > 0. Throws DomainError otherwise.
double ln_gamma(double x);

/// Gamma(x) for any real x that is not a pole; negative arguments use reflection.
double gamma_function(double x);

/// B(p, q) = Gamma(p) Gamma(q) / Gamma(p + q), p, q > 0.
double beta(double p, double q);

struct Hyp2F1Params {
  double a;
  double b;
  double c;

  /// Throws DomainError when c is a nonpositive integer.
  void validate() const;
};

struct SeriesOptions {
  double rel_tol = 1e-15;
  std::size_t max_terms = 100000;
};

/// F(a, b, c; z) by direct summation, 0 <= z < 1.
/// Throws ConvergenceError (carrying the partial sum) if the term cap is reached.
double hyp2f1(const Hyp2F1Params& p, double z, const SeriesOptions& opt = {});

/// dF/dz = (ab/c) F(a+1, b+1, c+1; z).
double hyp2f1_derivative(const Hyp2F1Params& p, double z, const SeriesOptions& opt = {});

/// F(a, b, c; z) for z in [0, 1) including z close to 1. Sums the series up to
/// z = 1/2 and continues by integrating the hypergeometric equation in
/// s = -log(1 - z), which is free of the z = 1 singularity. Independent of the
/// unit-argument connection coefficients.
double hyp2f1_continued(const Hyp2F1Params& p, double z, double rel_tol = 1e-12);

enum class LimitKind { Finite, LogDivergent, PowerDivergent };

std::string_view to_string(LimitKind kind);

/// Behaviour of F(a, b, c; z) as z -> 1, classified by the sign of c - a - b.
///   Finite:         F(1) = value
///   LogDivergent:   F(z) / ln(1 - z) -> value
///   PowerDivergent: F(z) / (1 - z)^exponent -> value, exponent = c - a - b
struct Hyp2F1Limit {
  LimitKind kind;
  double value;
  std::optional<double> exponent;
};

/// Requires a, b > 0.
Hyp2F1Limit hyp2f1_at_one(const Hyp2F1Params& p);

}  // namespace hk
