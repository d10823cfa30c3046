#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "optclaw/control.hpp"
#include "optclaw/stepper.hpp"

namespace optclaw {

// A named, fully pinned experiment setup. The CLI starts from one of these
// and applies config-file and flag overrides on top, so runs are
// reproducible from the preset name alone.
struct ExperimentConfig {
  std::string name;
  double domain_lo = -1.0;
  double domain_hi = 1.0;
  int n_cells = 100;
  double t_final = 0.5;
  double cfl_ratio = 0.25;  // dt = cfl_ratio * dx
  Scheme scheme = Scheme::Weno3Ssprk3;
  Boundary boundary = Boundary::Zero;
  double gamma = 0.5;
  double eps = kWenoEpsDefault;
  double tol = 1e-14;
  int max_iterations = 50;
  std::function<double(double)> initial_data;
  std::function<double(double)> target;  // tracking target y_d
  TrackingInterval tracking{-1.0, 1.0};
  // CSV reports restrict to cells inside [window_lo, window_hi]. Presets
  // whose data is not compactly supported pad the computational domain so
  // the zero halo stays causally disconnected from this window; the pad
  // cells are scaffolding and are not emitted.
  double window_lo = -1e300;
  double window_hi = 1e300;
};

// smooth-order   : compactly supported C-inf bump on [-1.5,1.5], pre-shock
//                  horizon, mesh-doubling reference point (N=150, dt=dx/2).
// example1       : stationary-shock Riemann data -sign(x), reported on
//                  [-1,1] and computed on [-2,2]; the backward sweep from
//                  p_T = y(T) exposes the funnel of zeros. Alias:
//                  shock-adjoint.
// control-target : tracking problem whose target 2x-1/2 on [1/4,3/4] is
//                  reached exactly by the ramp control at t = 1/2.
std::vector<std::string> preset_names();
std::optional<ExperimentConfig> make_preset(std::string_view name);

// Assembles grid, time axis and descent parameters from a config.
ControlProblem control_problem_from(const ExperimentConfig& config);

}  // namespace optclaw
