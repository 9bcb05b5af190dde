#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nuds {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user input: parameters, shapes, config documents.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Mismatched vector lengths, family sizes or matrix shapes.
class DimensionError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// A numerical routine could not produce a trustworthy answer.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public NumericalError {
 public:
  SingularMatrixError(std::size_t pivot_index, double pivot_magnitude)
      : NumericalError("singular matrix: pivot " + std::to_string(pivot_index) +
                       " has magnitude " + std::to_string(pivot_magnitude)),
        pivot_index_(pivot_index),
        pivot_magnitude_(pivot_magnitude) {}

  std::size_t pivot_index() const { return pivot_index_; }
  double pivot_magnitude() const { return pivot_magnitude_; }

 private:
  std::size_t pivot_index_;
  double pivot_magnitude_;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, int iterations)
      : NumericalError(what + " (after " + std::to_string(iterations) +
                       " iterations)"),
        iterations_(iterations) {}

  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

// A recoverability hypothesis does not hold (frame condition, rho(A) < 1,
// invertibility of I - A, row convergence of the data).
class ConditionError : public Error {
 public:
  using Error::Error;
};

class NotAFrameError : public ConditionError {
 public:
  NotAFrameError(const std::string& what, double alpha)
      : ConditionError(what + ": lower frame bound alpha = " +
                       std::to_string(alpha)),
        alpha_(alpha) {}

  double alpha() const { return alpha_; }

 private:
  double alpha_;
};

}  // namespace nuds
