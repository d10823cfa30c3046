#include "optclaw/control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "optclaw/errors.hpp"

namespace optclaw {

namespace {

std::vector<double> sample_target(const ControlProblem& problem) {
  if (!problem.target) throw ConfigError("control: no target function configured");
  std::vector<double> target(problem.grid.n_cells);
  for (int j = 0; j < problem.grid.n_cells; ++j)
    target[j] = problem.target(problem.grid.center(j));
  require_finite(target, "target samples");
  return target;
}

SolveParams solve_params(const ControlProblem& problem) {
  SolveParams params;
  params.model = problem.model;
  params.eps = problem.eps;
  params.gamma = problem.gamma;
  params.alpha = problem.alpha;
  return params;
}

bool window_hits_grid(const Grid1D& grid, TrackingInterval window) {
  for (int j = 0; j < grid.n_cells; ++j)
    if (window.contains(grid.center(j))) return true;
  return false;
}

}  // namespace

double objective(const StateField& y_final, const std::vector<double>& target,
                 TrackingInterval window, double dx) {
  if (y_final.values.size() != target.size())
    throw ContractViolation("objective: target length does not match the state");
  double acc = 0.0;
  bool hit = false;
  for (int j = 0; j < y_final.grid.n_cells; ++j) {
    if (!window.contains(y_final.grid.center(j))) continue;
    hit = true;
    const double d = y_final.values[j] - target[j];
    acc += 0.5 * d * d;
  }
  if (!hit) throw ConfigError("objective: tracking window contains no cell centers");
  return dx * acc;
}

GradientResult gradient(const ControlProblem& problem, const StateField& u0) {
  const std::vector<double> target = sample_target(problem);
  if (!window_hits_grid(problem.grid, problem.tracking))
    throw ConfigError("gradient: tracking window contains no cell centers");

  const Trajectory traj = integrate(u0, problem.scheme, problem.time, solve_params(problem));
  StateField y_final{problem.grid, traj.final_state};

  // Terminal mismatch restricted to the tracking window; outside it the
  // objective does not see the state, so the terminal adjoint vanishes.
  TerminalData terminal = terminal_data(y_final, target);
  for (int j = 0; j < problem.grid.n_cells; ++j)
    if (!problem.tracking.contains(problem.grid.center(j))) terminal.values[j] = 0.0;

  AdjointSweep sweep = adjoint_sweep(traj, terminal, problem.model);

  GradientResult result{StateField{problem.grid, std::move(sweep.p0)},
                        objective(y_final, target, problem.tracking, problem.grid.dx()),
                        std::move(y_final)};
  return result;
}

StateField initial_guess(const ControlProblem& problem) {
  if (!problem.grid.symmetric())
    throw ConfigError("initial_guess: mirroring needs a symmetric grid (a == -b)");
  const std::vector<double> target = sample_target(problem);

  // Mirrored target as initial data: z(0, x) = y_d(-x) is an index
  // reversal because cell centers come in +-x pairs on a symmetric grid.
  std::vector<double> reversed(target.rbegin(), target.rend());
  const StateField evolved = integrate_final(StateField{problem.grid, std::move(reversed)},
                                             problem.scheme, problem.time, solve_params(problem));

  std::vector<double> guess(evolved.values.rbegin(), evolved.values.rend());
  return StateField{problem.grid, std::move(guess)};
}

DescentReport armijo_descent(const ControlProblem& problem, const StateField& u0_init) {
  if (problem.max_iterations < 0) throw ConfigError("descent: negative iteration cap");
  if (!(problem.initial_step > 0.0) || !(problem.armijo_shrink > 0.0) ||
      !(problem.armijo_shrink < 1.0))
    throw ConfigError("descent: need initial_step > 0 and shrink in (0, 1)");

  const double dx = problem.grid.dx();
  const std::vector<double> target = sample_target(problem);
  DescentReport report;
  report.control = u0_init;

  GradientResult current = gradient(problem, u0_init);
  report.objectives.push_back(current.objective);
  report.final_state = current.y_final;

  for (int it = 0; it < problem.max_iterations; ++it) {
    // Squared L2(I) norm of the descent direction; the gradient pairing
    // carries the same dx weight, so this is the predicted slope.
    double norm2 = 0.0;
    for (int j = 0; j < problem.grid.n_cells; ++j)
      if (problem.tracking.contains(problem.grid.center(j)))
        norm2 += current.grad.values[j] * current.grad.values[j];
    norm2 *= dx;
    if (norm2 == 0.0) {  // stationary point, nothing left to do
      report.converged = true;
      break;
    }

    // Forward-only probes; the gradient at the accepted iterate is
    // evaluated once after the search settles.
    double step = problem.initial_step;
    StateField trial{problem.grid, std::vector<double>(problem.grid.n_cells)};
    bool accepted = false;
    for (int backtrack = 0; backtrack <= problem.max_backtracks; ++backtrack) {
      for (int j = 0; j < problem.grid.n_cells; ++j)
        trial.values[j] = report.control.values[j] - step * current.grad.values[j];
      const StateField y_final =
          integrate_final(trial, problem.scheme, problem.time, solve_params(problem));
      const double trial_objective =
          objective(y_final, target, problem.tracking, problem.grid.dx());
      if (trial_objective <= report.objectives.back() - 0.5 * step * norm2) {
        accepted = true;
        report.grad_norms.push_back(std::sqrt(norm2));
        report.steps.push_back(step);
        report.control = trial;
        break;
      }
      step *= problem.armijo_shrink;
    }
    if (!accepted)
      throw DescentStall("descent: line search exhausted " +
                             std::to_string(problem.max_backtracks) + " backtracks",
                         std::move(report));

    current = gradient(problem, report.control);
    report.objectives.push_back(current.objective);
    report.final_state = current.y_final;

    const std::size_t k = report.objectives.size();
    if (std::abs(report.objectives[k - 1] - report.objectives[k - 2]) <= problem.tol) {
      report.converged = true;
      break;
    }
  }
  return report;
}

}  // namespace optclaw
