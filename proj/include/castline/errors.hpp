#pragma once

#include <stdexcept>
#include <string>

namespace castline {

/// A candidate trajectory violates workspace limits.
class FeasibilityError : public std::runtime_error {
 public:
  explicit FeasibilityError(const std::string& what) : std::runtime_error(what) {}
};

/// The integrator produced a non-finite state.
class SimulationDivergedError : public std::runtime_error {
 public:
  SimulationDivergedError(const std::string& what, long step)
      : std::runtime_error(what + " at step " + std::to_string(step)), step_index(step) {}
  long step_index;
};

/// A commanded gripper motion would leave the workspace.
class WorkspaceError : public std::runtime_error {
 public:
  WorkspaceError(const std::string& what, double admissible)
      : std::runtime_error(what), max_admissible(admissible) {}
  double max_admissible;
};

/// Numeric failure (e.g. Cholesky breakdown after jitter escalation).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Problem size exceeds what the backend can handle.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Operation called on an object in the wrong state (e.g. untrained model).
class StateError : public std::runtime_error {
 public:
  explicit StateError(const std::string& what) : std::runtime_error(what) {}
};

/// NN training produced a NaN loss.
class TrainingDivergedError : public std::runtime_error {
 public:
  TrainingDivergedError(const std::string& what, int epoch)
      : std::runtime_error(what + " at epoch " + std::to_string(epoch)), epoch_index(epoch) {}
  int epoch_index;
};

}  // namespace castline
