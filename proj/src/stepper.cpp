#include "optclaw/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "optclaw/errors.hpp"
#include "optclaw/spatial.hpp"

namespace optclaw {

const char* scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::Weno3Ssprk3: return "weno3-ssprk3";
    case Scheme::Weno3Erk4: return "weno3-erk4";
    case Scheme::LaxFriedrichs: return "lf";
    case Scheme::EngquistOsher: return "eo";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  if (name == "weno3-ssprk3") return Scheme::Weno3Ssprk3;
  if (name == "weno3-erk4") return Scheme::Weno3Erk4;
  if (name == "lf") return Scheme::LaxFriedrichs;
  if (name == "eo") return Scheme::EngquistOsher;
  return std::nullopt;
}

bool is_weno_scheme(Scheme scheme) {
  return scheme == Scheme::Weno3Ssprk3 || scheme == Scheme::Weno3Erk4;
}

TimeGrid make_time_grid(double t_final, double dx, double ratio) {
  if (t_final < 0.0) throw ConfigError("time grid: horizon must be nonnegative");
  if (!(dx > 0.0) || !(ratio > 0.0)) throw ConfigError("time grid: need dx > 0 and ratio > 0");
  TimeGrid time;
  time.t_final = t_final;
  if (t_final == 0.0) return time;
  time.n_steps = std::max(1, static_cast<int>(std::lround(t_final / (ratio * dx))));
  time.dt = t_final / time.n_steps;
  time.cfl_ratio = time.dt / dx;
  return time;
}

namespace {

std::vector<double> axpy(double a, const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + y[i];
  return out;
}

}  // namespace

RkStepResult ssprk3_step(const std::vector<double>& y, double dt, const RhsFn& rhs) {
  RkStepResult result;
  result.stages.reserve(3);
  result.stages.push_back(y);
  const std::vector<double> k0 = rhs(y);
  std::vector<double> y1 = axpy(dt, k0, y);

  const std::vector<double> k1 = rhs(y1);
  std::vector<double> y2(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    y2[i] = kSsprk3Stage2[0] * y[i] + kSsprk3Stage2[1] * (y1[i] + dt * k1[i]);
  result.stages.push_back(std::move(y1));

  const std::vector<double> k2 = rhs(y2);
  result.y_next.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    result.y_next[i] = kSsprk3Stage3[0] * y[i] + kSsprk3Stage3[1] * (y2[i] + dt * k2[i]);
  result.stages.push_back(std::move(y2));
  return result;
}

RkStepResult erk4_step(const std::vector<double>& y, double dt, const RhsFn& rhs) {
  RkStepResult result;
  result.stages.reserve(4);
  result.stages.push_back(y);
  const std::vector<double> k1 = rhs(y);
  result.stages.push_back(axpy(0.5 * dt, k1, y));
  const std::vector<double> k2 = rhs(result.stages[1]);
  result.stages.push_back(axpy(0.5 * dt, k2, y));
  const std::vector<double> k3 = rhs(result.stages[2]);
  result.stages.push_back(axpy(dt, k3, y));
  const std::vector<double> k4 = rhs(result.stages[3]);

  result.y_next.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    result.y_next[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return result;
}

namespace {

double max_abs_speed(const FluxModel& model, const std::vector<double>& values) {
  // Convex flux: |f'| peaks at the data range endpoints; ghosts repeat
  // interior values or add 0, so widening the range by 0 covers both.
  double lo = 0.0, hi = 0.0;
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return std::max(std::abs(model.df(lo)), std::abs(model.df(hi)));
}

void require_cfl(double dt, double dx, double limit, double speed, const char* scheme) {
  if (speed <= 0.0) return;
  if (dt > limit * dx / speed * (1.0 + 1e-12))
    throw ConfigError(std::string(scheme) + ": CFL violation, dt = " + std::to_string(dt) +
                      " exceeds " + std::to_string(limit * dx / speed));
}

constexpr double kFullyDiscreteCfl = 0.5;

template <typename InterfaceFlux>
StateField conservative_step(const StateField& y, double dt, const InterfaceFlux& fhat) {
  const int n = y.grid.n_cells;
  const double lambda = dt / y.grid.dx();
  const std::vector<double> padded = padded_view(y);
  const int g = y.grid.ghost;

  std::vector<double> flux(n + 1);
  for (int i = 0; i <= n; ++i) flux[i] = fhat(padded[i + g - 1], padded[i + g]);

  StateField next{y.grid, std::vector<double>(n)};
  for (int j = 0; j < n; ++j)
    next.values[j] = y.values[j] - lambda * (flux[j + 1] - flux[j]);
  return next;
}

}  // namespace

StateField lf_step(const StateField& y, double dt, double gamma, const FluxModel& model) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("lf_step: gamma must lie in (0, 1]");
  if (y.grid.ghost < 1) throw ContractViolation("lf_step: ghost width must be at least 1");
  require_finite(y.values, "lf_step state");
  require_cfl(dt, y.grid.dx(), gamma, max_abs_speed(model, y.values), "lf_step");
  const double dx = y.grid.dx();
  return conservative_step(y, dt, [&](double a, double b) {
    return lf_flux(a, b, gamma, dx, dt, model);
  });
}

StateField eo_step(const StateField& y, double dt, const FluxModel& model) {
  if (y.grid.ghost < 1) throw ContractViolation("eo_step: ghost width must be at least 1");
  require_finite(y.values, "eo_step state");
  require_cfl(dt, y.grid.dx(), kFullyDiscreteCfl, max_abs_speed(model, y.values), "eo_step");
  return conservative_step(y, dt, [&](double a, double b) { return eo_flux(a, b, model); });
}

namespace {

RhsFn make_weno_rhs(const Grid1D& grid, const SolveParams& params, SplitBound bound) {
  const FluxModel model = params.model;
  const double eps = params.eps;
  return [grid, model, bound, eps](const std::vector<double>& v) {
    // A non-finite stage state is a blowup of the explicit step, not a
    // caller error; report it as a solver failure.
    if (!all_finite(v)) throw SolverError("integration blew up (non-finite stage state)");
    return weno3_rhs(StateField{grid, v}, model, bound, eps).values;
  };
}

double resolve_alpha(const StateField& u0, const SolveParams& params) {
  return params.alpha ? *params.alpha : split_bound_from_data(params.model, u0.values).alpha;
}

}  // namespace

Trajectory integrate(const StateField& u0, Scheme scheme, const TimeGrid& time,
                     const SolveParams& params) {
  require_finite(u0.values, "integrate initial data");
  Trajectory traj;
  traj.scheme = scheme;
  traj.grid = u0.grid;
  traj.time = time;
  traj.eps = params.eps;
  traj.gamma = params.gamma;
  traj.alpha = resolve_alpha(u0, params);
  traj.steps.reserve(time.n_steps);

  RhsFn rhs;
  if (is_weno_scheme(scheme)) rhs = make_weno_rhs(u0.grid, params, SplitBound{traj.alpha});

  std::vector<double> y = u0.values;
  for (int n = 0; n < time.n_steps; ++n) {
    StepRecord record;
    switch (scheme) {
      case Scheme::Weno3Ssprk3: {
        RkStepResult step = ssprk3_step(y, time.dt, rhs);
        record.stages = std::move(step.stages);
        y = std::move(step.y_next);
        break;
      }
      case Scheme::Weno3Erk4: {
        RkStepResult step = erk4_step(y, time.dt, rhs);
        record.stages = std::move(step.stages);
        y = std::move(step.y_next);
        break;
      }
      case Scheme::LaxFriedrichs: {
        record.stages.push_back(y);
        y = lf_step(StateField{u0.grid, std::move(y)}, time.dt, params.gamma, params.model).values;
        break;
      }
      case Scheme::EngquistOsher: {
        record.stages.push_back(y);
        y = eo_step(StateField{u0.grid, std::move(y)}, time.dt, params.model).values;
        break;
      }
    }
    if (!all_finite(y))
      throw SolverError("integration blew up (non-finite state)", n, (n + 1) * time.dt);
    traj.steps.push_back(std::move(record));
  }
  traj.final_state = std::move(y);
  return traj;
}

StateField integrate_final(const StateField& u0, Scheme scheme, const TimeGrid& time,
                           const SolveParams& params) {
  require_finite(u0.values, "integrate initial data");
  const double alpha = resolve_alpha(u0, params);
  RhsFn rhs;
  if (is_weno_scheme(scheme)) rhs = make_weno_rhs(u0.grid, params, SplitBound{alpha});

  std::vector<double> y = u0.values;
  for (int n = 0; n < time.n_steps; ++n) {
    switch (scheme) {
      case Scheme::Weno3Ssprk3:
        y = ssprk3_step(y, time.dt, rhs).y_next;
        break;
      case Scheme::Weno3Erk4:
        y = erk4_step(y, time.dt, rhs).y_next;
        break;
      case Scheme::LaxFriedrichs:
        y = lf_step(StateField{u0.grid, std::move(y)}, time.dt, params.gamma, params.model).values;
        break;
      case Scheme::EngquistOsher:
        y = eo_step(StateField{u0.grid, std::move(y)}, time.dt, params.model).values;
        break;
    }
    if (!all_finite(y))
      throw SolverError("integration blew up (non-finite state)", n, (n + 1) * time.dt);
  }
  return StateField{u0.grid, std::move(y)};
}

}  // namespace optclaw
