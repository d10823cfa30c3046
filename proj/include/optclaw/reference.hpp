#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace optclaw {

// C-infinity bump supported on [-1, 1]: exp(-1/(1-x^2)) inside, 0 outside.
double smooth_bump(double x);
double smooth_bump_derivative(double x);

// Pre-shock entropy solution of the scalar law via characteristics:
// solves x0 + u0(x0) t == x for x0 with a safeguarded Newton iteration
// (bisection fallback inside the bracket x -+ speed_bound*t) and returns
// u0(x0). Valid while characteristics do not cross; the residual is driven
// below newton_tol.
double characteristics_solution(const std::function<double(double)>& u0,
                                const std::function<double(double)>& du0, double speed_bound,
                                double t, double x, double newton_tol);

// Adjoint of the stationary-shock Riemann problem with terminal mismatch
// y(T): the exact backward solution at t = 0 is a three-plateau profile
// with a funnel of zeros between the characteristics feeding the shock.
double example1_reversible_solution(double x);

// Tracking target y_d(x) = 2x - 1/2 on [1/4, 3/4] (zero elsewhere) and the
// control u0*(x) = -2x + 3/2 on the same window that reproduces it exactly
// at t = 1/2 through a rarefaction-shock pair.
struct TrackingPair {
  std::function<double(double)> target;
  std::function<double(double)> optimal_control;
};
TrackingPair tracking_pair_ramp();

// Dense central-difference Jacobian of an arbitrary vector operator;
// the reference every analytic Jacobian is checked against.
using VectorFn = std::function<std::vector<double>(const std::vector<double>&)>;
std::vector<std::vector<double>> dense_fd_jacobian(const VectorFn& op,
                                                   const std::vector<double>& state, double h);

// log2 error-decay table for a mesh-doubling ladder. The first row has no
// rate (quiet NaN); non-doubling ladders are rejected.
struct RateRow {
  int n = 0;
  double error = 0.0;
  double rate = 0.0;
};
struct RateTable {
  std::vector<RateRow> rows;
};
RateTable convergence_rates(const std::vector<std::pair<int, double>>& errors);

}  // namespace optclaw
