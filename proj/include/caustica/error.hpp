#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace caustica {

// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Solver was handed a bracket whose endpoint signs do not straddle a root.
class BracketError : public Error {
 public:
  using Error::Error;
};

// Solver hit its iteration cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Requested operation needs more digits than the working precision carries.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// Errors raised while iterating the billiard map carry the index of the
// step that failed, counting from 1.
class StepError : public Error {
 public:
  StepError(const std::string& what, std::optional<std::int64_t> iteration = std::nullopt)
      : Error(what), iteration_(iteration) {}

  std::optional<std::int64_t> iteration() const { return iteration_; }
  void set_iteration(std::int64_t k) { iteration_ = k; }

 private:
  std::optional<std::int64_t> iteration_;
};

// The oriented line is tangent to the table or misses it altogether.
class TangentLineError : public StepError {
 public:
  using StepError::StepError;
};

// The root solver inside a billiard step failed.
class SolverFailure : public StepError {
 public:
  using StepError::StepError;
};

// Newton search for a periodic orbit stopped reducing the residual.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double last_residual)
      : Error(what), last_residual_(last_residual) {}
  double last_residual() const { return last_residual_; }

 private:
  double last_residual_;
};

// Newton search hit a (numerically) singular Jacobian.
class DegenerateJacobian : public Error {
 public:
  using Error::Error;
};

}  // namespace caustica
