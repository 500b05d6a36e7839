#pragma once

// Numerical certification of
//   H(n,b) \int_{bdry} u^2/|x| + ((b-2)^2/4) \int u^2/rho^2 <= \int |grad u|^2
// and of the calibration argument behind its sharpness.

#include <array>
#include <utility>
#include <vector>

#include "hardy_kato/constants.hpp"
#include "hardy_kato/extremal.hpp"
#include "hardy_kato/quadrature.hpp"
#include "hardy_kato/test_function.hpp"

namespace hk {

struct InequalityReport {
  Params params;
  QuadratureSpec spec;
  double energy = 0.0;          ///< \int |grad u|^2
  double hardy_term = 0.0;      ///< \int u^2 / rho^2
  double trace_term = 0.0;      ///< \int_{t=0} u^2 / |x|
  double constant = 0.0;        ///< H(n, beta)
  double interior_coeff = 0.0;  ///< (beta-2)^2 / 4
  double rayleigh = 0.0;        ///< (energy - interior_coeff * hardy_term) / trace_term
  double margin = 0.0;          ///< rayleigh - constant
  double quadrature_error = 0.0;  ///< propagated bound on the error of margin
  bool pass = false;              ///< margin >= -quadrature_error
};

/// The three integrals with their quadrature error estimates.
struct InequalityTerms {
  Estimate energy;
  Estimate hardy;
  Estimate trace;
};

InequalityTerms inequality_terms(const TestFunction& u, int n, const QuadratureSpec& spec);

Estimate energy(const TestFunction& u, int n, const QuadratureSpec& spec);
Estimate hardy_term(const TestFunction& u, int n, const QuadratureSpec& spec);
Estimate trace_term(const TestFunction& u, int n, const QuadratureSpec& spec);

/// J(u) = \int |grad u|^2 - ((beta-2)^2/4) \int u^2/rho^2.
double functional_J(const TestFunction& u, const Params& p, const QuadratureSpec& spec);

/// Throws DegenerateInputError when the trace term vanishes.
InequalityReport verify_inequality(const TestFunction& u, const Params& p,
                                   const QuadratureSpec& spec);

/// Divergence-free field built from the family {k phi}:
///   F(x, t, v) = (2 (v/phi) grad phi, (v/phi)^2 |grad phi|^2 + ((beta-2)^2/4) v^2 / rho^2).
class CalibrationField {
 public:
  explicit CalibrationField(const Params& params) : params_(params), extremal_(params) {}

  const Params& params() const { return params_; }
  const ExtremalProfile& extremal() const { return extremal_; }

  /// (F_r, F_t, F_v): F_r is the coefficient of x/|x| in the x-block.
  std::array<double, 3> field(double r, double t, double v) const;

 private:
  Params params_;
  ExtremalProfile extremal_;
};

/// Slope field p(x, t, v) = (v / phi) grad phi as (along |x|, along t).
std::pair<double, double> mayer_slope(const CalibrationField& c, double r, double t, double v);

struct FieldSample {
  double r;
  double t;
  double v;
};

/// Max over the samples of |div F| / (|F| / rho), by centered differences with
/// steps h * rho in r and t and h * v in v.
double divergence_check(const CalibrationField& c, const std::vector<FieldSample>& pts, double h);

/// -\int_{|x| > r_min} u^2(x,0) phi_t(x,0) / phi(x,0) dx; equals H * trace_term.
Estimate flux_sigma1(const TestFunction& u, const Params& p, const QuadratureSpec& spec);

/// ((n-2)/4) rho^{n-2} \int_{upper unit hemisphere} phi^2(rho .), independent of rho.
Estimate sphere_flux(const CalibrationField& c, double rho, double rel_tol = 1e-13);

struct Window {
  double r;
  double R;
};

struct WindowResult {
  Window window;
  double energy = 0.0;    ///< \int_{B_R^+ \ B_r} |grad phi|^2
  double hardy = 0.0;     ///< \int_{B_R^+ \ B_r} phi^2 / rho^2
  double boundary = 0.0;  ///< \int_{r < |x| < R} phi^2(x,0) / |x|
  double ratio = 0.0;     ///< (energy - interior_coeff * hardy) / boundary
  double gap = 0.0;       ///< ratio - H
  double gap_times_log = 0.0;
  double inner_flux = 0.0;  ///< (n-2)/(2r) \int_{S_r} v, flux through the inner hemisphere
  double outer_flux = 0.0;  ///< (n-2)/(2R) \int_{S_R} v
  double quadrature_error = 0.0;  ///< propagated error bound on ratio
};

/// Rayleigh ratio of the extremal truncated to each half-annulus.
/// The calibration identity reads J = H * boundary + inner_flux - outer_flux.
std::vector<WindowResult> optimality_sweep(const Params& p, const std::vector<Window>& windows,
                                           const QuadratureSpec& spec);

struct EscobarCheck {
  double lhs = 0.0;  ///< escobar_constant(n) * ||u_a||_{L^{2(n-1)/(n-2)}(bdry)}
  double rhs = 0.0;  ///< ||grad u_a||_{L^2}
  double tail_estimate = 0.0;     ///< relative size of the analytic tail added beyond r_max
  double quadrature_error = 0.0;  ///< relative error bound on lhs / rhs
};

/// Default truncation for escobar_check: [1e-6 a, 1e9 a].
QuadratureSpec escobar_spec(double a);

EscobarCheck escobar_check(double a, int n, const QuadratureSpec& spec);

}  // namespace hk
