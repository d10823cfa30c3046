#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "optclaw/adjoint.hpp"
#include "optclaw/flux.hpp"
#include "optclaw/grid.hpp"
#include "optclaw/stepper.hpp"

namespace optclaw {

// Closed tracking window (in physical coordinates) over which the terminal
// mismatch is measured.
struct TrackingInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Tracking-type terminal objective for one conservation law: steer the
// state at t_final toward target over the tracking window by choosing the
// initial data.
struct ControlProblem {
  Grid1D grid;
  TimeGrid time;
  FluxModel model;
  Scheme scheme = Scheme::Weno3Ssprk3;
  std::function<double(double)> target;
  TrackingInterval tracking;
  double eps = kWenoEpsDefault;
  double gamma = 0.5;
  double tol = 1e-14;          // stop when |J_{k+1} - J_k| <= tol
  int max_iterations = 50;
  double initial_step = 1.0;   // line search restarts here every iteration
  double armijo_shrink = 0.95;
  int max_backtracks = 500;
  // Fixed split bound for derivative checks; production runs leave this
  // empty and let every gradient evaluation refresh it from its iterate.
  std::optional<double> alpha;
};

// Midpoint-rule objective dx * sum_{x_j in I} (y_j - target_j)^2 / 2.
// Throws ConfigError when no cell center lies in the window.
double objective(const StateField& y_final, const std::vector<double>& target,
                 TrackingInterval window, double dx);

struct GradientResult {
  StateField grad;      // p^0; the derivative of J in direction v is dx * <p^0, v>
  double objective = 0.0;
  StateField y_final;
};

GradientResult gradient(const ControlProblem& problem, const StateField& u0);

// Warm start exploiting reversibility: evolve the mirrored target forward
// with the problem's own scheme, then mirror the result back. Requires a
// symmetric grid (a == -b) so mirroring is an exact index reversal.
StateField initial_guess(const ControlProblem& problem);

struct DescentReport {
  std::vector<double> objectives;  // J at iterates 0..k
  std::vector<double> steps;       // accepted step length per iteration
  std::vector<double> grad_norms;  // ||p^0||_{L2(I)} at iterates 0..k-1
  StateField control;
  StateField final_state;
  bool converged = false;          // |dJ| <= tol triggered the stop
};

// Backtracking line search wedged on the sufficient decrease
//   J(u - a p) <= J(u) - a/2 ||p||^2_{L2(I)}.
// Throws DescentStall (carrying the partial report) when the backtrack cap
// is exhausted.
class DescentStall : public SolverError {
 public:
  DescentStall(const std::string& what, DescentReport report)
      : SolverError(what), report_(std::move(report)) {}
  const DescentReport& report() const { return report_; }

 private:
  DescentReport report_;
};

DescentReport armijo_descent(const ControlProblem& problem, const StateField& u0_init);

}  // namespace optclaw
