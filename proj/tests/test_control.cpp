#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "optclaw/control.hpp"
#include "optclaw/presets.hpp"
#include "optclaw/reference.hpp"

using namespace optclaw;

namespace {

ControlProblem small_problem(Scheme scheme, int n_cells, double t_final) {
  ControlProblem problem;
  problem.grid = make_grid(-1.0, 1.0, n_cells);
  problem.time = make_time_grid(t_final, problem.grid.dx(), 0.25);
  problem.model = burgers();
  problem.scheme = scheme;
  problem.target = [](double) { return 0.0; };
  problem.tracking = {-1.0, 1.0};
  return problem;
}

double objective_probe(const ControlProblem& problem, const StateField& u0,
                       const std::vector<double>& target) {
  const StateField y =
      integrate_final(u0, problem.scheme, problem.time,
                      SolveParams{problem.model, problem.eps, problem.gamma, problem.alpha});
  return objective(y, target, problem.tracking, problem.grid.dx());
}

}  // namespace

TEST_CASE("objective hand values on a four cell grid") {
  const Grid1D grid = make_grid(-1.0, 1.0, 4);  // centers -0.75 -0.25 0.25 0.75
  const StateField y = make_state(grid, {1.0, 2.0, 3.0, 4.0});
  const std::vector<double> zero(4, 0.0);
  // dx/2 * (1 + 4 + 9 + 16) = 0.25 * 30
  CHECK(objective(y, zero, {-1.0, 1.0}, grid.dx()) == doctest::Approx(7.5).epsilon(1e-15));
  // right half only: 0.25 * (9 + 16)
  CHECK(objective(y, zero, {0.0, 1.0}, grid.dx()) == doctest::Approx(6.25).epsilon(1e-15));
  CHECK_THROWS_AS(objective(y, zero, {0.8, 0.9}, grid.dx()), ConfigError);
  const std::vector<double> short_target(3, 0.0);
  CHECK_THROWS_AS(objective(y, short_target, {-1.0, 1.0}, grid.dx()), ContractViolation);
}

TEST_CASE("adjoint gradient matches directional finite differences") {
  // d/ds J(u0 + s v) at s = 0 against dx <p0, v>, Richardson-extrapolated
  // central differences. Directions v = u0 .* w vanish wherever u0 does,
  // keeping the probes inside each scheme's smooth regime.
  for (Scheme scheme : {Scheme::Weno3Ssprk3, Scheme::Weno3Erk4, Scheme::LaxFriedrichs,
                        Scheme::EngquistOsher}) {
    ControlProblem problem = small_problem(scheme, 64, 0.2);
    problem.target = [](double x) { return 0.1 * smooth_bump(x - 0.1); };
    problem.alpha = 1.0;  // freeze the split bound across all probes

    const StateField u0 = sample(problem.grid, [](double x) {
      return smooth_bump(x) * (0.35 + 0.2 * std::sin(3.0 * x));
    });
    const GradientResult g = gradient(problem, u0);

    std::vector<double> target(problem.grid.n_cells);
    for (int j = 0; j < problem.grid.n_cells; ++j)
      target[j] = problem.target(problem.grid.center(j));

    std::mt19937_64 rng(97 + static_cast<int>(scheme));
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
      StateField v = u0;
      double pairing = 0.0;
      for (int j = 0; j < problem.grid.n_cells; ++j) {
        v.values[j] = u0.values[j] * uni(rng);
        pairing += g.grad.values[j] * v.values[j];
      }
      pairing *= problem.grid.dx();

      const auto central = [&](double h) {
        StateField up = u0, dn = u0;
        for (int j = 0; j < problem.grid.n_cells; ++j) {
          up.values[j] += h * v.values[j];
          dn.values[j] -= h * v.values[j];
        }
        return (objective_probe(problem, up, target) - objective_probe(problem, dn, target)) /
               (2.0 * h);
      };
      const double h = 0x1p-9;
      const double fd = (4.0 * central(h / 2.0) - central(h)) / 3.0;
      INFO(std::string(scheme_name(scheme)));
      // the quotient-rule weights carry enough curvature that the FD floor
      // sits near 1e-8 here; the pairing itself is exact to rounding
      CHECK(std::abs(fd - pairing) <= 1e-7 * (1.0 + std::abs(fd)));
    }
  }
}

TEST_CASE("a state that already matches its target is a fixed point") {
  ControlProblem problem = small_problem(Scheme::Weno3Ssprk3, 32, 0.1);
  const StateField u0 = sample(problem.grid, [](double x) { return 0.3 * smooth_bump(x); });
  const StateField y_final =
      integrate_final(u0, problem.scheme, problem.time,
                      SolveParams{problem.model, problem.eps, problem.gamma, std::nullopt});
  const Grid1D grid = problem.grid;
  const std::vector<double> attained = y_final.values;
  problem.target = [grid, attained](double x) {
    const int j = static_cast<int>(std::lround((x - grid.a) / grid.dx() - 0.5));
    return attained[std::max(0, std::min(grid.n_cells - 1, j))];
  };

  const GradientResult g = gradient(problem, u0);
  CHECK(g.objective == 0.0);
  for (double p : g.grad.values) CHECK(p == 0.0);

  const DescentReport report = armijo_descent(problem, u0);
  CHECK(report.converged);
  CHECK(report.objectives.size() == 1);
  CHECK(report.objectives[0] == 0.0);
  CHECK(report.steps.empty());
  CHECK(report.control.values == u0.values);
}

TEST_CASE("descent on a short horizon makes monotone progress") {
  ControlProblem problem = small_problem(Scheme::LaxFriedrichs, 48, 0.3);
  const TrackingPair pair = tracking_pair_ramp();
  problem.target = pair.target;
  problem.tracking = {0.25, 0.75};
  problem.max_iterations = 5;

  const StateField cold = make_state(problem.grid, std::vector<double>(48, 0.0));
  const DescentReport report = armijo_descent(problem, cold);
  REQUIRE(report.objectives.size() >= 2);
  CHECK(report.objectives.size() == report.steps.size() + 1);
  CHECK(report.objectives.size() == report.grad_norms.size() + 1);
  for (std::size_t k = 1; k < report.objectives.size(); ++k) {
    CHECK(report.objectives[k] < report.objectives[k - 1]);
  }
  CHECK(report.final_state.values.size() == static_cast<std::size_t>(48));
}

TEST_CASE("exhausted line search raises a stall carrying the partial report") {
  // Zero steps make the solve the identity, so J(u - a p) = (1-a)^2 J(u)
  // exactly and a = 4 violates the sufficient decrease test; with no
  // backtracks allowed the very first iteration must stall.
  ControlProblem problem = small_problem(Scheme::Weno3Ssprk3, 16, 0.0);
  problem.initial_step = 4.0;
  problem.max_backtracks = 0;
  const StateField u0 = sample(problem.grid, [](double x) { return smooth_bump(x); });
  try {
    armijo_descent(problem, u0);
    FAIL("expected a stall");
  } catch (const DescentStall& stall) {
    CHECK(stall.report().objectives.size() == 1);
    CHECK(stall.report().steps.empty());
    CHECK(!stall.report().converged);
    CHECK(std::string(stall.what()).find("backtrack") != std::string::npos);
  }
}

TEST_CASE("a zero target warm start is identically zero") {
  ControlProblem problem = small_problem(Scheme::Weno3Ssprk3, 40, 0.2);
  const StateField guess = initial_guess(problem);
  for (double v : guess.values) CHECK(v == 0.0);
}

TEST_CASE("warm start requires a symmetric grid") {
  ControlProblem problem = small_problem(Scheme::Weno3Ssprk3, 16, 0.1);
  problem.grid = make_grid(0.0, 2.0, 16);
  problem.time = make_time_grid(0.1, problem.grid.dx(), 0.25);
  CHECK_THROWS_AS(initial_guess(problem), ConfigError);
}

TEST_CASE("warm start regression against the stored profile") {
  ExperimentConfig cfg = *make_preset("control-target");
  cfg.n_cells = 64;
  const ControlProblem problem = control_problem_from(cfg);
  const StateField guess = initial_guess(problem);

  std::ifstream golden(std::string(TEST_DATA_DIR) + "/initial_guess_golden.csv");
  REQUIRE(golden.good());
  std::string line;
  std::getline(golden, line);  // header x,u0
  int rows = 0;
  while (std::getline(golden, line)) {
    const auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    const double x = std::strtod(line.substr(0, comma).c_str(), nullptr);
    const double u = std::strtod(line.substr(comma + 1).c_str(), nullptr);
    REQUIRE(rows < problem.grid.n_cells);
    CHECK(std::abs(problem.grid.center(rows) - x) <= 1e-12);
    CHECK(std::abs(guess.values[rows] - u) <= 1e-12);
    ++rows;
  }
  CHECK(rows == problem.grid.n_cells);
}
