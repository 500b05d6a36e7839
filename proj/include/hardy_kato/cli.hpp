#pragma once

// Command-line front end. `run` is the whole program minus process setup, so
// it can be driven from tests.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hardy_kato/constants.hpp"
#include "hardy_kato/quadrature.hpp"

namespace hk::cli {

enum class Command { Constant, Table, ExtremalEval, OdeShoot, Verify, Optimality, Flux, Specfun };
enum class Format { Csv, Json };

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct RunConfig {
  Command command = Command::Constant;
  Params params;
  QuadratureSpec spec;
  std::uint64_t seed = kDefaultSeed;
  std::optional<Format> output_format;  ///< unset: the command's own default
  std::optional<std::string> output_path;

  // table
  int n_min = 3;
  int n_max = 6;
  double beta_step = 0.5;

  // extremal-eval
  double rho = 1.0;
  std::vector<double> thetas;
  int points = 8;

  // ode-shoot
  double tol = 1e-6;
  double theta_max = 1.5697963267948966;  // pi/2 - 1e-3

  // verify, flux
  std::string family = "bump";
  int count = 100;

  // optimality (windows (10^-k, 10^k)), flux (sphere radii)
  std::vector<int> window_exponents = {2, 4, 6};
  std::vector<double> radii = {0.1, 1.0, 10.0};

  // specfun
  std::string function = "hyp2f1";
  double x = 1.0, p = 1.0, q = 1.0;
  double a = 0.5, b = 0.5, c = 1.5, z = 0.5;

  /// Throws DomainError on malformed grids or counts.
  void validate() const;
};

enum ExitCode : int { kOk = 0, kNumericalFailure = 1, kUsageError = 2 };

/// Parses args (without the program name), runs the subcommand, writes the
/// result to `out` (or --out) and diagnostics to `err`. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hk::cli
