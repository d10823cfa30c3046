#pragma once

#include <stdexcept>
#include <string>

namespace optclaw {

// Invalid user-facing configuration: bad grid bounds, unknown preset, ...
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical solve broke down (non-finite state, CFL violation, stalled
// line search). Carries the step index when one is known.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what, int step = -1, double time = 0.0)
      : std::runtime_error(what), step_(step), time_(time) {}
  int step() const { return step_; }
  double time() const { return time_; }

 private:
  int step_;
  double time_;
};

// Caller violated an API precondition: dimension mismatch, missing stage
// records, parameters inconsistent with a trajectory's metadata.
class ContractViolation : public std::invalid_argument {
 public:
  explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace optclaw
