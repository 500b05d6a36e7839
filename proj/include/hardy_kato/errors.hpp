#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hk {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A Gamma-function argument hit a pole (nonpositive integer).
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Series summation did not meet its truncation criterion within the term cap.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double partial_sum, std::size_t terms)
      : std::runtime_error(what), partial_sum_(partial_sum), terms_(terms) {}

  double partial_sum() const noexcept { return partial_sum_; }
  std::size_t terms() const noexcept { return terms_; }

 private:
  double partial_sum_;
  std::size_t terms_;
};

/// Quadrature refinement budget exhausted before reaching the requested tolerance.
class ToleranceError : public std::runtime_error {
 public:
  ToleranceError(const std::string& what, double value, double achieved_error)
      : std::runtime_error(what), value_(value), achieved_error_(achieved_error) {}

  double value() const noexcept { return value_; }
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double value_;
  double achieved_error_;
};

/// Shooting bracket endpoints do not straddle the critical slope.
class BracketError : public std::runtime_error {
 public:
  BracketError(const std::string& what, double lo, double lo_end, double hi, double hi_end)
      : std::runtime_error(what), lo_(lo), lo_end_(lo_end), hi_(hi), hi_end_(hi_end) {}

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  /// Endpoint quantity observed at theta_max for each bracket slope.
  double lo_end() const noexcept { return lo_end_; }
  double hi_end() const noexcept { return hi_end_; }

 private:
  double lo_, lo_end_, hi_, hi_end_;
};

/// The inequality is vacuous for this input (zero boundary trace).
class DegenerateInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hk
