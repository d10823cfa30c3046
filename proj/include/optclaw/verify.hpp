#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "optclaw/stepper.hpp"

namespace optclaw {

// Structural self-checks over seeded random instances. The same routines
// back the CLI's verify command, the unit tests, and the acceptance suite,
// so every consumer sees identical metrics for a given seed.

struct CheckResult {
  std::string name;
  bool passed = false;
  double metric = 0.0;     // worst observed value
  double threshold = 0.0;  // pinned bound the metric must stay below
  std::string detail;
};

// Testing seam: lets a test corrupt one side of an identity and observe
// the corresponding check fail.
enum class FaultInjection { None, FlipAdjointSign };

// Relative gap in < q, dPhi/du0 v > == < p0, v > for one scheme over one
// seeded instance (N = 64 cells, 16 steps); the tangent side is a central
// difference with one Richardson extrapolation level.
double dot_product_relative_error(Scheme scheme, std::uint64_t seed,
                                  FaultInjection fault = FaultInjection::None);

// Analytic banded Jacobian against the dense central-difference oracle
// over 20 seeded states (N = 50): worst mixed-relative in-band gap and
// worst absolute off-band magnitude.
struct JacobianCheck {
  double in_band = 0.0;
  double off_band = 0.0;
};
JacobianCheck jacobian_fd_discrepancy(std::uint64_t seed);

// Full battery: weight normalization, interface flux consistency, per-step
// mass conservation, transpose identities, Jacobian comparison, adjoint
// coefficient convexity. `filter` keeps checks whose name contains it.
std::vector<CheckResult> run_verification(std::uint64_t seed, const std::string& filter = "",
                                          FaultInjection fault = FaultInjection::None);

}  // namespace optclaw
