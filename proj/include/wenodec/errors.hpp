#pragma once

#include <exception>
#include <string>
#include <utility>

namespace wenodec {

// Base for every recoverable solver failure. The time loop catches these and
// turns them into a crashed run outcome; they must never abort the process.
class SolverError : public std::exception {
 public:
  explicit SolverError(std::string message) : message_(std::move(message)) {}

  const char* what() const noexcept override { return message_.c_str(); }

  // Call sites annotate the failure as it climbs (cell, stage, iteration).
  void add_context(const std::string& context) {
    message_ += " [" + context + "]";
  }

 private:
  std::string message_;
};

// Invalid scheme/problem setup detected before any stepping.
class ConfigError : public SolverError {
 public:
  using SolverError::SolverError;
};

// A state with nonpositive density or pressure reached a conversion,
// an eigendecomposition, or a flux. `cell` is the first offending cell
// (or face) index when the caller knows it, -1 otherwise.
class NonPhysicalState : public SolverError {
 public:
  explicit NonPhysicalState(std::string message, int cell = -1)
      : SolverError(std::move(message)), cell(cell) {}

  int cell;
};

// The exact Riemann solver detected data whose solution contains vacuum.
class VacuumGenerated : public SolverError {
 public:
  using SolverError::SolverError;
};

// An iterative kernel (Newton pressure solve) exhausted its iteration budget.
class NoConvergence : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace wenodec
