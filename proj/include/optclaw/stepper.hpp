#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "optclaw/flux.hpp"
#include "optclaw/grid.hpp"

namespace optclaw {

enum class Scheme { Weno3Ssprk3, Weno3Erk4, LaxFriedrichs, EngquistOsher };

inline constexpr std::array<Scheme, 4> kAllSchemes = {
    Scheme::Weno3Ssprk3, Scheme::Weno3Erk4, Scheme::LaxFriedrichs, Scheme::EngquistOsher};

const char* scheme_name(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);
bool is_weno_scheme(Scheme scheme);

// Time axis with dt an exact divisor of the horizon: dt = ratio*dx is
// rounded to the nearest integer step count, then readjusted so that
// n_steps * dt == t_final.
struct TimeGrid {
  double t_final = 0.0;
  int n_steps = 0;
  double dt = 0.0;
  double cfl_ratio = 0.0;  // dt / dx actually in effect
};

TimeGrid make_time_grid(double t_final, double dx, double ratio);

using RhsFn = std::function<std::vector<double>(const std::vector<double>&)>;

// One explicit step together with the states at which the rhs was
// evaluated; the adjoint sweeps re-linearize at exactly these states.
struct RkStepResult {
  std::vector<double> y_next;
  std::vector<std::vector<double>> stages;
};

// Shu-Osher convex combinations of the second and third stage; each stage
// mixes the previous iterates with one forward Euler substep.
inline constexpr std::array<double, 2> kSsprk3Stage2 = {0.75, 0.25};
inline constexpr std::array<double, 2> kSsprk3Stage3 = {1.0 / 3.0, 2.0 / 3.0};

RkStepResult ssprk3_step(const std::vector<double>& y, double dt, const RhsFn& rhs);

// Classical fourth-order tableau. The rhs is autonomous by convention;
// time-dependent problems enter through state augmentation.
RkStepResult erk4_step(const std::vector<double>& y, double dt, const RhsFn& rhs);

// Fully discrete conservative updates
//   y_j^{n+1} = y_j - (dt/dx) (fhat(y_j, y_{j+1}) - fhat(y_{j-1}, y_j)).
// Both enforce their CFL condition before touching the state and reject
// violations as configuration errors.
StateField lf_step(const StateField& y, double dt, double gamma, const FluxModel& model);
StateField eo_step(const StateField& y, double dt, const FluxModel& model);

struct StepRecord {
  std::vector<std::vector<double>> stages;
};

// Full forward solve record: per-step stage states plus the final state,
// along with every parameter an adjoint sweep must replay.
struct Trajectory {
  Scheme scheme = Scheme::Weno3Ssprk3;
  Grid1D grid;
  TimeGrid time;
  double alpha = 0.0;  // split bound in effect (WENO3 schemes)
  double eps = kWenoEpsDefault;
  double gamma = 0.5;  // LF viscosity parameter
  std::vector<StepRecord> steps;
  std::vector<double> final_state;
};

struct SolveParams {
  FluxModel model;
  double eps = kWenoEpsDefault;
  double gamma = 0.5;
  // Fixed split bound; when absent it is computed once from the initial
  // data range and held for the whole horizon.
  std::optional<double> alpha;
};

Trajectory integrate(const StateField& u0, Scheme scheme, const TimeGrid& time,
                     const SolveParams& params);

// Same march without stage records, for callers that only need y^{n_T}
// (line-search probes, warm-start construction).
StateField integrate_final(const StateField& u0, Scheme scheme, const TimeGrid& time,
                           const SolveParams& params);

}  // namespace optclaw
