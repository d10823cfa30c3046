#include "optclaw/reference.hpp"

#include <cmath>
#include <limits>

#include "optclaw/errors.hpp"

namespace optclaw {

double smooth_bump(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - x * x));
}

double smooth_bump_derivative(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  const double w = 1.0 - x * x;
  return smooth_bump(x) * (-2.0 * x / (w * w));
}

double characteristics_solution(const std::function<double(double)>& u0,
                                const std::function<double(double)>& du0, double speed_bound,
                                double t, double x, double newton_tol) {
  if (t < 0.0) throw ContractViolation("characteristics: negative time");
  if (t == 0.0) return u0(x);

  const auto residual = [&](double x0) { return x0 + u0(x0) * t - x; };
  double lo = x - speed_bound * t - 1e-12;
  double hi = x + speed_bound * t + 1e-12;
  double r_lo = residual(lo);
  double r_hi = residual(hi);
  if (r_lo > 0.0 || r_hi < 0.0)
    throw ContractViolation("characteristics: speed bound does not bracket the foot point");

  double x0 = x;  // interior starting guess
  double r = residual(x0);
  for (int iter = 0; iter < 200; ++iter) {
    if (std::abs(r) <= newton_tol) return u0(x0);
    // Maintain the bracket, then try Newton; pre-shock the residual is
    // strictly increasing in x0, so 1 + du0*t > 0 on the solution branch.
    if (r > 0.0) hi = x0;
    else lo = x0;
    const double slope = 1.0 + du0(x0) * t;
    double next = (slope > 1e-12) ? x0 - r / slope : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x0 = next;
    r = residual(x0);
  }
  if (std::abs(r) <= newton_tol) return u0(x0);
  throw SolverError("characteristics: root search did not meet the residual tolerance");
}

double example1_reversible_solution(double x) {
  if (x < -0.5) return 1.0;
  if (x > 0.5) return -1.0;
  return 0.0;
}

TrackingPair tracking_pair_ramp() {
  TrackingPair pair;
  pair.target = [](double x) { return (x >= 0.25 && x <= 0.75) ? 2.0 * x - 0.5 : 0.0; };
  pair.optimal_control = [](double x) {
    return (x >= 0.25 && x <= 0.75) ? -2.0 * x + 1.5 : 0.0;
  };
  return pair;
}

std::vector<std::vector<double>> dense_fd_jacobian(const VectorFn& op,
                                                   const std::vector<double>& state, double h) {
  if (!(h > 0.0)) throw ContractViolation("dense_fd_jacobian: need h > 0");
  const std::size_t n = state.size();
  std::vector<std::vector<double>> jac(n, std::vector<double>(n, 0.0));
  std::vector<double> probe = state;
  for (std::size_t k = 0; k < n; ++k) {
    probe[k] = state[k] + h;
    const std::vector<double> fwd = op(probe);
    probe[k] = state[k] - h;
    const std::vector<double> bwd = op(probe);
    probe[k] = state[k];
    if (fwd.size() != n || bwd.size() != n)
      throw ContractViolation("dense_fd_jacobian: operator changed dimension");
    for (std::size_t j = 0; j < n; ++j) jac[j][k] = (fwd[j] - bwd[j]) / (2.0 * h);
  }
  return jac;
}

RateTable convergence_rates(const std::vector<std::pair<int, double>>& errors) {
  if (errors.empty()) throw ContractViolation("convergence_rates: empty ladder");
  RateTable table;
  table.rows.reserve(errors.size());
  for (std::size_t i = 0; i < errors.size(); ++i) {
    const auto [n, error] = errors[i];
    if (n <= 0 || !(error > 0.0))
      throw ContractViolation("convergence_rates: need positive sizes and errors");
    RateRow row{n, error, std::numeric_limits<double>::quiet_NaN()};
    if (i > 0) {
      if (n != 2 * errors[i - 1].first)
        throw ContractViolation("convergence_rates: ladder must double the resolution");
      row.rate = std::log(errors[i - 1].second / error) / std::log(2.0);
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace optclaw
