#pragma once

#include <stdexcept>
#include <string>

namespace vmolab {

/// Input violates an operation's precondition (bad parameter, mismatched spaces, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size cap would be exceeded.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Iterative solve did not reach the requested residual.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, int iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

}  // namespace vmolab
