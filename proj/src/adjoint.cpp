#include "optclaw/adjoint.hpp"

#include <cmath>
#include <string>
#include <tuple>

#include "optclaw/errors.hpp"

namespace optclaw {

TerminalData terminal_data(const StateField& y_final, const std::vector<double>& target) {
  if (y_final.values.size() != target.size())
    throw ContractViolation("terminal_data: target length does not match the state");
  TerminalData terminal;
  terminal.values.resize(target.size());
  for (std::size_t j = 0; j < target.size(); ++j)
    terminal.values[j] = y_final.values[j] - target[j];
  require_finite(terminal.values, "terminal data");
  return terminal;
}

namespace {

void require_trajectory(const Trajectory& traj, Scheme scheme, std::size_t stage_count,
                        const TerminalData& terminal) {
  if (traj.scheme != scheme)
    throw ContractViolation(std::string("adjoint sweep: trajectory was produced by ") +
                            scheme_name(traj.scheme) + ", expected " + scheme_name(scheme));
  if (terminal.values.size() != traj.final_state.size())
    throw ContractViolation("adjoint sweep: terminal data length does not match the trajectory");
  for (const StepRecord& record : traj.steps)
    if (record.stages.size() != stage_count)
      throw ContractViolation("adjoint sweep: trajectory is missing stage records");
}

// q <- q - dt * J(y_stage)^T q, the transpose of one forward Euler factor.
std::vector<double> euler_transpose(const JacobianFn& jacobian, const std::vector<double>& stage,
                                    double dt, const std::vector<double>& q) {
  const BandedJacobian jac = jacobian(stage);
  std::vector<double> jq = jacobian_transpose_apply(jac, q);
  std::vector<double> out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = q[i] - dt * jq[i];
  return out;
}

}  // namespace

AdjointSweep adjoint_ssprk3_sweep(const Trajectory& traj, const TerminalData& terminal,
                                  const JacobianFn& jacobian, bool record_snapshots) {
  require_trajectory(traj, Scheme::Weno3Ssprk3, 3, terminal);
  AdjointSweep sweep;
  sweep.scheme = traj.scheme;
  std::vector<double> p = terminal.values;
  if (record_snapshots) sweep.snapshots.assign(traj.steps.size() + 1, {});
  if (record_snapshots) sweep.snapshots[traj.steps.size()] = p;

  const double dt = traj.time.dt;
  for (int n = static_cast<int>(traj.steps.size()) - 1; n >= 0; --n) {
    const auto& stages = traj.steps[n].stages;
    // Forward step: y+ = 1/3 y0 + 1/2-weighted Euler chain through the
    // stages; its linearization is 1/3 I + 1/2 A2 + 1/6 A2 A1 A0 with
    // A_k = I - dt dF(stage_k). Transposing reverses the stage order.
    const std::vector<double> q1 = euler_transpose(jacobian, stages[2], dt, p);
    const std::vector<double> q2 = euler_transpose(jacobian, stages[1], dt, q1);
    const std::vector<double> q3 = euler_transpose(jacobian, stages[0], dt, q2);
    std::vector<double> pn(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
      pn[i] = p[i] / 3.0 + 0.5 * q1[i] + q3[i] / 6.0;
    p = std::move(pn);
    if (record_snapshots) sweep.snapshots[n] = p;
  }
  sweep.p0 = std::move(p);
  return sweep;
}

AdjointSweep adjoint_erk4_sweep(const Trajectory& traj, const TerminalData& terminal,
                                const JacobianFn& jacobian, bool record_snapshots) {
  require_trajectory(traj, Scheme::Weno3Erk4, 4, terminal);
  AdjointSweep sweep;
  sweep.scheme = traj.scheme;
  std::vector<double> p = terminal.values;
  if (record_snapshots) sweep.snapshots.assign(traj.steps.size() + 1, {});
  if (record_snapshots) sweep.snapshots[traj.steps.size()] = p;

  const double dt = traj.time.dt;
  const std::size_t m = p.size();
  for (int n = static_cast<int>(traj.steps.size()) - 1; n >= 0; --n) {
    const auto& stages = traj.steps[n].stages;
    // Reverse mode over y+ = y + dt/6 (k1 + 2 k2 + 2 k3 + k4) with the rhs
    // -F evaluated at the four stored stage states. mu_i weights stage i's
    // rhs; v_i = J(stage_i)^T mu_i with J = dF.
    std::vector<double> mu(m), v4(m), v3(m), v2(m), v1(m);

    for (std::size_t i = 0; i < m; ++i) mu[i] = dt / 6.0 * p[i];
    v4 = jacobian_transpose_apply(jacobian(stages[3]), mu);
    std::vector<double> sum(m);
    for (std::size_t i = 0; i < m; ++i) sum[i] = -v4[i];

    for (std::size_t i = 0; i < m; ++i) mu[i] = dt / 3.0 * p[i] - dt * v4[i];
    v3 = jacobian_transpose_apply(jacobian(stages[2]), mu);
    for (std::size_t i = 0; i < m; ++i) sum[i] -= v3[i];

    for (std::size_t i = 0; i < m; ++i) mu[i] = dt / 3.0 * p[i] - 0.5 * dt * v3[i];
    v2 = jacobian_transpose_apply(jacobian(stages[1]), mu);
    for (std::size_t i = 0; i < m; ++i) sum[i] -= v2[i];

    for (std::size_t i = 0; i < m; ++i) mu[i] = dt / 6.0 * p[i] - 0.5 * dt * v2[i];
    v1 = jacobian_transpose_apply(jacobian(stages[0]), mu);
    for (std::size_t i = 0; i < m; ++i) sum[i] -= v1[i];

    for (std::size_t i = 0; i < m; ++i) p[i] += sum[i];
    if (record_snapshots) sweep.snapshots[n] = p;
  }
  sweep.p0 = std::move(p);
  return sweep;
}

namespace {

// Shared three-point backward update
//   p_j^n = c_minus p_{j-1}^{n+1} + c_mid p_j^{n+1} + c_plus p_{j+1}^{n+1}
// with coefficients depending on f'(y_j^n), the state consumed by the
// forward step being transposed. Out-of-range neighbors read as zero;
// under an Extend halo the ghost copies the edge cell, so transposing the
// forward step adds the ghost column's contribution back onto that cell.
template <typename Coefficients>
AdjointSweep three_point_sweep(const Trajectory& traj, const TerminalData& terminal,
                               const Coefficients& coeffs, bool record_snapshots) {
  AdjointSweep sweep;
  sweep.scheme = traj.scheme;
  std::vector<double> p = terminal.values;
  if (record_snapshots) sweep.snapshots.assign(traj.steps.size() + 1, {});
  if (record_snapshots) sweep.snapshots[traj.steps.size()] = p;

  const int n_cells = static_cast<int>(p.size());
  const bool extend = traj.grid.boundary == Boundary::Extend;
  std::vector<double> pn(p.size());
  for (int n = static_cast<int>(traj.steps.size()) - 1; n >= 0; --n) {
    const std::vector<double>& y = traj.steps[n].stages[0];
    for (int j = 0; j < n_cells; ++j) {
      const auto [c_minus, c_mid, c_plus] = coeffs(y[j]);
      double acc = c_mid * p[j];
      if (j > 0) acc += c_minus * p[j - 1];
      if (j + 1 < n_cells) acc += c_plus * p[j + 1];
      pn[j] = acc;
    }
    if (extend) {
      pn[0] += std::get<2>(coeffs(y[0])) * p[0];
      pn[n_cells - 1] += std::get<0>(coeffs(y[n_cells - 1])) * p[n_cells - 1];
    }
    std::swap(p, pn);
    if (record_snapshots) sweep.snapshots[n] = p;
  }
  sweep.p0 = std::move(p);
  return sweep;
}

}  // namespace

AdjointSweep adjoint_lf_sweep(const Trajectory& traj, const TerminalData& terminal, double gamma,
                              const FluxModel& model, bool record_snapshots) {
  require_trajectory(traj, Scheme::LaxFriedrichs, 1, terminal);
  if (gamma != traj.gamma)
    throw ContractViolation("adjoint_lf_sweep: gamma does not match the trajectory");
  const double half_ratio = 0.5 * traj.time.dt / traj.grid.dx();
  return three_point_sweep(
      traj, terminal,
      [&model, gamma, half_ratio](double yj) {
        const double speed = model.df(yj);
        return std::tuple{0.5 * gamma - half_ratio * speed, 1.0 - gamma,
                          0.5 * gamma + half_ratio * speed};
      },
      record_snapshots);
}

AdjointSweep adjoint_eo_sweep(const Trajectory& traj, const TerminalData& terminal,
                              const FluxModel& model, bool record_snapshots) {
  require_trajectory(traj, Scheme::EngquistOsher, 1, terminal);
  const double half_ratio = 0.5 * traj.time.dt / traj.grid.dx();
  return three_point_sweep(
      traj, terminal,
      [&model, half_ratio](double yj) {
        const double speed = model.df(yj);
        const double mag = std::abs(speed);
        return std::tuple{half_ratio * (mag - speed), 1.0 - 2.0 * half_ratio * mag,
                          half_ratio * (mag + speed)};
      },
      record_snapshots);
}

AdjointSweep adjoint_sweep(const Trajectory& traj, const TerminalData& terminal,
                           const FluxModel& model, bool record_snapshots) {
  if (is_weno_scheme(traj.scheme)) {
    const Grid1D grid = traj.grid;
    const SplitBound bound{traj.alpha};
    const double eps = traj.eps;
    JacobianFn jacobian = [grid, model, bound, eps](const std::vector<double>& v) {
      return weno3_jacobian(StateField{grid, v}, model, bound, eps);
    };
    return traj.scheme == Scheme::Weno3Ssprk3
               ? adjoint_ssprk3_sweep(traj, terminal, jacobian, record_snapshots)
               : adjoint_erk4_sweep(traj, terminal, jacobian, record_snapshots);
  }
  return traj.scheme == Scheme::LaxFriedrichs
             ? adjoint_lf_sweep(traj, terminal, traj.gamma, model, record_snapshots)
             : adjoint_eo_sweep(traj, terminal, model, record_snapshots);
}

}  // namespace optclaw
