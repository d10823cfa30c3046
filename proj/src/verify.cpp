#include "optclaw/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "optclaw/adjoint.hpp"
#include "optclaw/flux.hpp"
#include "optclaw/grid.hpp"
#include "optclaw/reference.hpp"
#include "optclaw/spatial.hpp"

namespace optclaw {
namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Smooth compactly supported field c0 + c1*sin(k1 pi x) + c2*cos(k2 pi x)
// under the bump envelope. Coefficients keep the sign of c0, so the field
// stays nonnegative and Engquist-Osher never sees its kink at zero move
// with the finite-difference parameter.
StateField modulated_bump(const Grid1D& grid, double c0, double c1, int k1, double c2, int k2) {
  return sample(grid, [=](double x) {
    return smooth_bump(x) * (c0 + c1 * std::sin(k1 * M_PI * x) + c2 * std::cos(k2 * M_PI * x));
  });
}

// --- weight normalization ------------------------------------------------

CheckResult check_weights(std::uint64_t seed) {
  CheckResult r;
  r.name = "weno-weight-normalization";
  r.threshold = 1e-15;
  const int count = 1000000;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    double h1 = uni(rng), h2 = uni(rng), h3 = uni(rng);
    const bool degenerate = (i % 64 == 0);
    if (degenerate) h1 = h2 = h3;
    for (int side = 0; side < 2; ++side) {
      const double g1 = side == 0 ? kGamma1Plus : kGamma1Minus;
      const double g2 = side == 0 ? kGamma2Plus : kGamma2Minus;
      const WenoWeights w = weno3_weights(h1, h2, h3, g1, g2, kWenoEpsDefault);
      worst = std::max(worst, std::abs(w.w1 + w.w2 - 1.0));
      if (w.w1 <= 0.0 || w.w2 <= 0.0) worst = std::max(worst, 1.0);
      if (degenerate) worst = std::max(worst, std::abs(w.w1 - g1));
    }
  }
  r.metric = worst;
  r.passed = worst <= r.threshold;
  r.detail = "1000000 stencils, both upwind directions";
  return r;
}

// --- interface flux consistency -------------------------------------------

CheckResult check_consistency() {
  CheckResult r;
  r.name = "interface-flux-consistency";
  r.threshold = 1e-14;
  const FluxModel model = burgers();
  const SplitBound bound = split_bound(model, -2.0, 2.0);
  double worst = 0.0;
  const int samples = 401;
  for (int i = 0; i < samples; ++i) {
    const double u = -2.0 + 4.0 * i / (samples - 1);
    const double fu = model.f(u);
    const auto [fp, fm] = split(model, bound, u);
    const double weno = weno3_flux_plus(fp, fp, fp, kWenoEpsDefault) +
                        weno3_flux_minus(fm, fm, fm, kWenoEpsDefault);
    const double lf = lf_flux(u, u, 0.5, 0.01, 0.0025, model);
    const double eo = eo_flux(u, u, model);
    const double scale = 1.0 + std::abs(fu);
    worst = std::max({worst, std::abs(weno - fu) / scale, std::abs(lf - fu) / scale,
                      std::abs(eo - fu) / scale});
  }
  r.metric = worst;
  r.passed = worst <= r.threshold;
  r.detail = "u in [-2,2], 401 samples, all three interface fluxes";
  return r;
}

// --- per-step mass conservation -------------------------------------------

CheckResult check_conservation(Scheme scheme, std::uint64_t seed) {
  CheckResult r;
  r.name = std::string("mass-conservation-") + scheme_name(scheme);
  r.threshold = 1e-12;
  const FluxModel model = burgers();
  const Grid1D grid = make_grid(-2.0, 2.0, 100);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const double c1 = 0.3 * uni(rng);
  const double c2 = 0.2 * uni(rng);
  const StateField u0 = modulated_bump(grid, 0.45, c1, 2, c2, 3);
  const TimeGrid time = make_time_grid(8 * 0.25 * grid.dx(), grid.dx(), 0.25);
  SolveParams params{model, kWenoEpsDefault, 0.5, std::nullopt};
  const Trajectory traj = integrate(u0, scheme, time, params);

  const double dx = grid.dx();
  auto mass = [dx](const std::vector<double>& v) {
    double s = 0.0;
    for (double y : v) s += y;
    return dx * s;
  };
  double worst = 0.0;
  for (int n = 0; n < time.n_steps; ++n) {
    const double before = mass(traj.steps[n].stages[0]);
    const double after = n + 1 < time.n_steps ? mass(traj.steps[n + 1].stages[0])
                                              : mass(traj.final_state);
    worst = std::max(worst, std::abs(after - before));
  }
  r.metric = worst;
  r.passed = worst <= r.threshold;
  r.detail = "8 steps, N=100, compact random data";
  return r;
}

// --- adjoint coefficient convexity ----------------------------------------

// Recovers the backward coefficients of one fully discrete step by sweeping
// unit terminal vectors through the actual adjoint code, then checks that
// each interior cell mixes its three neighbors convexly.
double convexity_violation(Scheme scheme, double gamma, double ratio, std::uint64_t seed) {
  const FluxModel model = burgers();
  const Grid1D grid = make_grid(-1.0, 1.0, 32);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-0.9, 0.9);
  std::vector<double> values(grid.n_cells);
  for (double& v : values) v = uni(rng);
  const StateField u0 = make_state(grid, values);
  const double dt = ratio * grid.dx();
  const TimeGrid time{dt, 1, dt, ratio};
  SolveParams params{model, kWenoEpsDefault, gamma, std::nullopt};
  const Trajectory traj = integrate(u0, scheme, time, params);

  const int n = grid.n_cells;
  std::vector<std::vector<double>> rows(n);
  for (int k = 0; k < n; ++k) {
    std::vector<double> e(n, 0.0);
    e[k] = 1.0;
    rows[k] = adjoint_sweep(traj, TerminalData{e}, model).p0;
  }

  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
      const double c = rows[k][j];
      if (std::abs(k - j) > 1) {
        worst = std::max(worst, std::abs(c));  // must be exactly tridiagonal
        continue;
      }
      if (c < 0.0) worst = std::max(worst, -c);
      sum += c;
    }
    if (j >= 1 && j + 1 < n) worst = std::max(worst, std::abs(sum - 1.0));
    else worst = std::max(worst, std::max(0.0, sum - 1.0));  // boundary rows lose mass to ghosts
  }
  return worst;
}

CheckResult check_convexity(std::uint64_t seed) {
  CheckResult r;
  r.name = "adjoint-coefficient-convexity";
  r.threshold = 1e-14;
  double worst = 0.0;
  worst = std::max(worst, convexity_violation(Scheme::LaxFriedrichs, 0.4, 0.2, seed + 1));
  worst = std::max(worst, convexity_violation(Scheme::LaxFriedrichs, 0.8, 0.4, seed + 2));
  worst = std::max(worst, convexity_violation(Scheme::EngquistOsher, 0.5, 0.5, seed + 3));
  r.metric = worst;
  r.passed = worst <= r.threshold;
  r.detail = "unit-vector sweeps, LF gamma in {0.4, 0.8} and EO";
  return r;
}

}  // namespace

// --- transpose identity -----------------------------------------------------

double dot_product_relative_error(Scheme scheme, std::uint64_t seed, FaultInjection fault) {
  const FluxModel model = burgers();
  const Grid1D grid = make_grid(-2.0, 2.0, 64);
  const double dx = grid.dx();
  const TimeGrid time = make_time_grid(16 * 0.25 * dx, dx, 0.25);

  std::mt19937_64 rng(seed + 1000003ULL * static_cast<std::uint64_t>(scheme));
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const double a1 = uni(rng), a2 = uni(rng), b1 = uni(rng), b2 = uni(rng);
  const StateField u0 = modulated_bump(grid, 0.35, 0.15 * a1, 1, 0.10 * a2, 2);
  const StateField du = modulated_bump(grid, 0.30, 0.10 * b1, 2, 0.05 * b2, 1);
  std::vector<double> terminal(grid.n_cells);
  for (double& v : terminal) v = 0.5 * uni(rng);

  SolveParams params{model, kWenoEpsDefault, 0.6,
                     split_bound_from_data(model, u0.values).alpha};

  const Trajectory traj = integrate(u0, scheme, time, params);
  const AdjointSweep sweep = adjoint_sweep(traj, TerminalData{terminal}, model);
  double adjoint_dot = dot(sweep.p0, du.values);
  if (fault == FaultInjection::FlipAdjointSign) adjoint_dot = -adjoint_dot;

  auto pairing = [&](double s) {
    std::vector<double> shifted(grid.n_cells);
    for (int j = 0; j < grid.n_cells; ++j) shifted[j] = u0.values[j] + s * du.values[j];
    const StateField yT = integrate_final(make_state(grid, shifted), scheme, time, params);
    return dot(terminal, yT.values);
  };
  auto central = [&](double h) { return (pairing(h) - pairing(-h)) / (2.0 * h); };
  const double h = 0x1p-9;
  const double tangent_dot = (4.0 * central(0.5 * h) - central(h)) / 3.0;

  return std::abs(tangent_dot - adjoint_dot) / std::max(std::abs(adjoint_dot), 1e-30);
}

// --- Jacobian against the dense difference oracle ---------------------------

JacobianCheck jacobian_fd_discrepancy(std::uint64_t seed) {
  const FluxModel model = burgers();
  const Grid1D grid = make_grid(-1.0, 1.0, 50);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.2, 1.2);

  JacobianCheck check;
  for (int instance = 0; instance < 20; ++instance) {
    std::vector<double> values(grid.n_cells);
    for (double& v : values) v = uni(rng);
    const StateField state = make_state(grid, values);
    const SplitBound bound = split_bound_from_data(model, values);

    auto op = [&](const std::vector<double>& v) {
      return weno3_rhs(make_state(grid, v), model, bound, kWenoEpsDefault).values;
    };
    const auto dense = dense_fd_jacobian(op, values, 1e-6);
    const BandedJacobian jac = weno3_jacobian(state, model, bound, kWenoEpsDefault);

    for (int j = 0; j < grid.n_cells; ++j) {
      for (int k = 0; k < grid.n_cells; ++k) {
        if (std::abs(k - j) > BandedJacobian::bandwidth) {
          check.off_band = std::max(check.off_band, std::abs(dense[j][k]));
          continue;
        }
        const double analytic = -jac.entry(j, k);  // rhs = -F
        const double gap = std::abs(dense[j][k] - analytic) / (1.0 + std::abs(analytic));
        check.in_band = std::max(check.in_band, gap);
      }
    }
  }
  return check;
}

// --- battery -----------------------------------------------------------------

std::vector<CheckResult> run_verification(std::uint64_t seed, const std::string& filter,
                                          FaultInjection fault) {
  std::vector<CheckResult> all;
  all.push_back(check_weights(seed));
  all.push_back(check_consistency());
  for (Scheme scheme : kAllSchemes) all.push_back(check_conservation(scheme, seed + 17));
  for (Scheme scheme : kAllSchemes) {
    CheckResult r;
    r.name = std::string("transpose-identity-") + scheme_name(scheme);
    r.threshold = 1e-11;
    r.metric = dot_product_relative_error(scheme, seed + 29, fault);
    r.passed = r.metric <= r.threshold;
    r.detail = "N=64, 16 steps, Richardson-extrapolated tangent";
    all.push_back(r);
  }
  {
    const JacobianCheck jc = jacobian_fd_discrepancy(seed + 41);
    CheckResult in;
    in.name = "jacobian-in-band";
    in.threshold = 1e-6;
    in.metric = jc.in_band;
    in.passed = jc.in_band <= in.threshold;
    in.detail = "20 states, N=50, h=1e-6";
    all.push_back(in);
    CheckResult off;
    off.name = "jacobian-off-band";
    off.threshold = 1e-10;
    off.metric = jc.off_band;
    off.passed = jc.off_band <= off.threshold;
    off.detail = "difference quotients outside the pentadiagonal band";
    all.push_back(off);
  }
  all.push_back(check_convexity(seed + 53));

  if (filter.empty()) return all;
  std::vector<CheckResult> kept;
  for (auto& r : all) {
    if (r.name.find(filter) != std::string::npos) kept.push_back(std::move(r));
  }
  return kept;
}

}  // namespace optclaw
