#pragma once

#include <stdexcept>
#include <string>

namespace nschsim {

// Bad configuration or initial data violating the model hypotheses.
// Mapped to CLI exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A solve that could not meet its contract. Mapped to CLI exit code 2.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Newton iteration cap hit; retry with smaller dt or positive lambda.
class NewtonDivergedError : public SolverError {
 public:
  using SolverError::SolverError;
};

// Step damping could not keep an iterate strictly inside (0,1).
class ConfinementLostError : public SolverError {
 public:
  using SolverError::SolverError;
};

// Linear residual still above tolerance after the iteration cap.
class LinearSolveFailedError : public SolverError {
 public:
  using SolverError::SolverError;
};

// Delay history shorter than tau; indicates a bookkeeping bug in the caller.
class BufferUnderrunError : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace nschsim
