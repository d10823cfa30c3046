#pragma once

#include <functional>
#include <vector>

#include "optclaw/flux.hpp"
#include "optclaw/grid.hpp"
#include "optclaw/spatial.hpp"
#include "optclaw/stepper.hpp"

namespace optclaw {

// Terminal condition of the backward sweep: componentwise mismatch
// y^{n_T} - y_d at the cell centers.
struct TerminalData {
  std::vector<double> values;
};

TerminalData terminal_data(const StateField& y_final, const std::vector<double>& target);

using JacobianFn = std::function<BandedJacobian(const std::vector<double>&)>;

struct AdjointSweep {
  Scheme scheme = Scheme::Weno3Ssprk3;
  std::vector<double> p0;
  // p^n for n = 0..n_steps when recording was requested; empty otherwise.
  std::vector<std::vector<double>> snapshots;
};

// Backward sweeps. Each one is the exact transpose of the corresponding
// forward step map, linearized at the stage states stored in the
// trajectory, so that for any terminal vector q and any direction v
//   < q, d y^{n_T}/d u0 v > == < p0, v >
// holds to rounding. The sweeps validate that the trajectory was produced
// by the matching scheme and that the replay parameters agree with the
// recorded ones.
AdjointSweep adjoint_ssprk3_sweep(const Trajectory& traj, const TerminalData& terminal,
                                  const JacobianFn& jacobian, bool record_snapshots = false);
AdjointSweep adjoint_erk4_sweep(const Trajectory& traj, const TerminalData& terminal,
                                const JacobianFn& jacobian, bool record_snapshots = false);
AdjointSweep adjoint_lf_sweep(const Trajectory& traj, const TerminalData& terminal, double gamma,
                              const FluxModel& model, bool record_snapshots = false);
AdjointSweep adjoint_eo_sweep(const Trajectory& traj, const TerminalData& terminal,
                              const FluxModel& model, bool record_snapshots = false);

// Dispatch on the trajectory's scheme; WENO3 schemes re-assemble the
// banded Jacobian from the trajectory's recorded flux parameters.
AdjointSweep adjoint_sweep(const Trajectory& traj, const TerminalData& terminal,
                           const FluxModel& model, bool record_snapshots = false);

}  // namespace optclaw
