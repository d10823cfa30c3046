#include "optclaw/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "optclaw/adjoint.hpp"
#include "optclaw/control.hpp"
#include "optclaw/csv.hpp"
#include "optclaw/errors.hpp"
#include "optclaw/presets.hpp"
#include "optclaw/reference.hpp"
#include "optclaw/verify.hpp"

namespace optclaw {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;
constexpr int kExitVerification = 3;

std::string joined_preset_names() {
  std::string out;
  for (const auto& name : preset_names()) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

// Everything a run needs once preset, config file and flags are merged.
struct ResolvedRun {
  ExperimentConfig cfg;
  std::string out_dir = "out";
  bool cold_start = false;
};

double parse_double_value(const std::string& value, const std::string& key) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as a number");
  }
  if (used != value.size())
    throw ConfigError("config key '" + key + "': trailing junk in '" + value + "'");
  return v;
}

int parse_int_value(const std::string& value, const std::string& key) {
  const double v = parse_double_value(value, key);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
  return i;
}

bool parse_bool_value(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("config key '" + key + "': expected a boolean, got '" + value + "'");
}

void apply_kv(ResolvedRun& run, const std::string& key, const std::string& value) {
  if (key == "scheme") {
    const auto scheme = parse_scheme(value);
    if (!scheme) throw ConfigError("unknown scheme '" + value + "'");
    run.cfg.scheme = *scheme;
  } else if (key == "n-cells") {
    run.cfg.n_cells = parse_int_value(value, key);
  } else if (key == "cfl") {
    run.cfg.cfl_ratio = parse_double_value(value, key);
  } else if (key == "gamma") {
    run.cfg.gamma = parse_double_value(value, key);
  } else if (key == "eps") {
    run.cfg.eps = parse_double_value(value, key);
  } else if (key == "t-final") {
    run.cfg.t_final = parse_double_value(value, key);
  } else if (key == "tol") {
    run.cfg.tol = parse_double_value(value, key);
  } else if (key == "max-iters") {
    run.cfg.max_iterations = parse_int_value(value, key);
  } else if (key == "out-dir") {
    run.out_dir = value;
  } else if (key == "cold-start") {
    run.cold_start = parse_bool_value(value, key);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

std::string trimmed(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r");
  return s.substr(from, to - from + 1);
}

void apply_config_file(ResolvedRun& run, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    apply_kv(run, trimmed(line.substr(0, eq)), trimmed(line.substr(eq + 1)));
  }
}

// Shared flags of the solver subcommands. Option pointers let the merge
// distinguish "flag given" from "default value".
struct RunFlags {
  std::string preset;
  std::string config_path;
  std::string out_dir;
  std::string scheme;
  int n_cells = 0;
  double cfl = 0.0;
  double gamma = 0.0;
  double eps = 0.0;
  double t_final = 0.0;
  double tol = 0.0;
  int max_iters = 0;

  CLI::Option* o_out_dir = nullptr;
  CLI::Option* o_scheme = nullptr;
  CLI::Option* o_n_cells = nullptr;
  CLI::Option* o_cfl = nullptr;
  CLI::Option* o_gamma = nullptr;
  CLI::Option* o_eps = nullptr;
  CLI::Option* o_t_final = nullptr;
  CLI::Option* o_tol = nullptr;
  CLI::Option* o_max_iters = nullptr;
};

void attach_run_flags(CLI::App* sub, RunFlags& f) {
  sub->add_option("--preset", f.preset, "experiment preset: " + joined_preset_names())
      ->required();
  sub->add_option("--config", f.config_path, "key=value override file");
  f.o_out_dir = sub->add_option("--out-dir", f.out_dir, "output directory (default: out)");
  f.o_scheme = sub->add_option("--scheme", f.scheme, "weno3-ssprk3 | weno3-erk4 | lf | eo");
  f.o_n_cells = sub->add_option("--n-cells", f.n_cells, "interior cell count");
  f.o_cfl = sub->add_option("--cfl", f.cfl, "time step as a fraction of dx");
  f.o_gamma = sub->add_option("--gamma", f.gamma, "Lax-Friedrichs viscosity in (0,1]");
  f.o_eps = sub->add_option("--eps", f.eps, "WENO weight regularization");
  f.o_t_final = sub->add_option("--t-final", f.t_final, "time horizon");
  f.o_tol = sub->add_option("--tol", f.tol, "descent stop threshold on |dJ|");
  f.o_max_iters = sub->add_option("--max-iters", f.max_iters, "descent iteration cap");
}

ResolvedRun resolve_run(const RunFlags& f) {
  const auto cfg = make_preset(f.preset);
  if (!cfg)
    throw ConfigError("unknown preset '" + f.preset + "'; valid presets: " +
                      joined_preset_names());
  ResolvedRun run;
  run.cfg = *cfg;
  if (!f.config_path.empty()) apply_config_file(run, f.config_path);
  if (f.o_out_dir->count()) run.out_dir = f.out_dir;
  if (f.o_scheme->count()) {
    const auto scheme = parse_scheme(f.scheme);
    if (!scheme) throw ConfigError("unknown scheme '" + f.scheme + "'");
    run.cfg.scheme = *scheme;
  }
  if (f.o_n_cells->count()) run.cfg.n_cells = f.n_cells;
  if (f.o_cfl->count()) run.cfg.cfl_ratio = f.cfl;
  if (f.o_gamma->count()) run.cfg.gamma = f.gamma;
  if (f.o_eps->count()) run.cfg.eps = f.eps;
  if (f.o_t_final->count()) run.cfg.t_final = f.t_final;
  if (f.o_tol->count()) run.cfg.tol = f.tol;
  if (f.o_max_iters->count()) run.cfg.max_iterations = f.max_iters;

  if (run.cfg.cfl_ratio <= 0.0) throw ConfigError("cfl must be positive");
  if (run.cfg.eps <= 0.0) throw ConfigError("eps must be positive");
  if (run.cfg.t_final < 0.0) throw ConfigError("t-final must be nonnegative");
  return run;
}

std::string out_path(const ResolvedRun& run, const char* file) {
  return run.out_dir + "/" + file;
}

std::vector<double> step_masses(const Trajectory& traj, double dx) {
  std::vector<double> masses;
  masses.reserve(traj.steps.size() + 1);
  auto mass = [dx](const std::vector<double>& v) {
    double s = 0.0;
    for (double y : v) s += y;
    return dx * s;
  };
  for (const auto& rec : traj.steps) masses.push_back(mass(rec.stages[0]));
  masses.push_back(mass(traj.final_state));
  return masses;
}

// Pad cells outside the report window are computational scaffolding; every
// per-cell CSV row and reported extremum is restricted to the window.
bool in_window(const ResolvedRun& run, double x) {
  return x >= run.cfg.window_lo - 1e-12 && x <= run.cfg.window_hi + 1e-12;
}

void write_state_final(const ResolvedRun& run, const Grid1D& grid,
                       const std::vector<double>& y) {
  CsvTable t;
  t.header = {"x", "y", "target"};
  for (int j = 0; j < grid.n_cells; ++j) {
    const double x = grid.center(j);
    if (!in_window(run, x)) continue;
    t.rows.push_back({format_double(x), format_double(y[j]), format_double(run.cfg.target(x))});
  }
  write_csv(out_path(run, "state_final.csv"), t);
}

// --- solve -----------------------------------------------------------------

int cmd_solve(const ResolvedRun& run) {
  const ControlProblem problem = control_problem_from(run.cfg);
  const StateField u0 = sample(problem.grid, run.cfg.initial_data);
  const SolveParams params{problem.model, run.cfg.eps, run.cfg.gamma, std::nullopt};
  const Trajectory traj = integrate(u0, run.cfg.scheme, problem.time, params);

  write_state_final(run, problem.grid, traj.final_state);

  const auto masses = step_masses(traj, problem.grid.dx());
  CsvTable mass_table;
  mass_table.header = {"t", "mass"};
  for (std::size_t n = 0; n < masses.size(); ++n) {
    mass_table.rows.push_back(
        {format_double(static_cast<double>(n) * problem.time.dt), format_double(masses[n])});
  }
  write_csv(out_path(run, "mass.csv"), mass_table);

  double drift = 0.0;
  for (std::size_t n = 1; n < masses.size(); ++n)
    drift = std::max(drift, std::abs(masses[n] - masses[n - 1]));
  std::printf("solve %s: scheme=%s N=%d steps=%d dt=%.6g mass-drift=%.3e\n",
              run.cfg.name.c_str(), scheme_name(run.cfg.scheme), problem.grid.n_cells,
              problem.time.n_steps, problem.time.dt, drift);
  return kExitOk;
}

// --- adjoint -----------------------------------------------------------------

std::vector<double> masked_mismatch(const ResolvedRun& run, const Grid1D& grid,
                                    const std::vector<double>& y_final,
                                    const std::vector<double>& target) {
  std::vector<double> m(grid.n_cells, 0.0);
  for (int j = 0; j < grid.n_cells; ++j) {
    if (run.cfg.tracking.contains(grid.center(j))) m[j] = y_final[j] - target[j];
  }
  return m;
}

int cmd_adjoint(const ResolvedRun& run, bool self_target) {
  const ControlProblem problem = control_problem_from(run.cfg);
  const StateField u0 = sample(problem.grid, run.cfg.initial_data);
  const SolveParams params{problem.model, run.cfg.eps, run.cfg.gamma, std::nullopt};
  const Trajectory traj = integrate(u0, run.cfg.scheme, problem.time, params);

  const std::vector<double> target =
      self_target ? traj.final_state : sample(problem.grid, run.cfg.target).values;
  const TerminalData terminal{masked_mismatch(run, problem.grid, traj.final_state, target)};
  const AdjointSweep sweep = adjoint_sweep(traj, terminal, problem.model);

  CsvTable t;
  t.header = {"x", "p0"};
  double max_p0 = 0.0;
  for (int j = 0; j < problem.grid.n_cells; ++j) {
    const double x = problem.grid.center(j);
    if (!in_window(run, x)) continue;
    t.rows.push_back({format_double(x), format_double(sweep.p0[j])});
    max_p0 = std::max(max_p0, std::abs(sweep.p0[j]));
  }
  write_csv(out_path(run, "adjoint_p0.csv"), t);
  std::printf("adjoint %s: scheme=%s N=%d max|p0|=%.6g\n", run.cfg.name.c_str(),
              scheme_name(run.cfg.scheme), problem.grid.n_cells, max_p0);

  // On the smooth preset the backward transport has a closed form: p at
  // t = 0 equals the initial data itself, which makes the sweep's accuracy
  // directly measurable.
  if (run.cfg.name == "smooth-order" && !self_target) {
    CsvTable err_table;
    err_table.header = {"x", "p0", "reference", "error"};
    double linf = 0.0;
    for (int j = 0; j < problem.grid.n_cells; ++j) {
      const double x = problem.grid.center(j);
      if (!in_window(run, x)) continue;
      const double ref = run.cfg.initial_data(x);
      const double err = sweep.p0[j] - ref;
      linf = std::max(linf, std::abs(err));
      err_table.rows.push_back({format_double(x), format_double(sweep.p0[j]),
                                format_double(ref), format_double(err)});
    }
    write_csv(out_path(run, "adjoint_error.csv"), err_table);
    std::printf("adjoint %s: Linf error vs transported data = %.6e\n", run.cfg.name.c_str(),
                linf);
  }
  return kExitOk;
}

// --- convergence ----------------------------------------------------------

int cmd_convergence(const ResolvedRun& run, int levels) {
  if (run.cfg.name != "smooth-order")
    throw ConfigError("convergence requires the smooth-order preset (closed-form reference)");
  if (levels < 1 || levels > 8) throw ConfigError("levels must be in 1..8");

  std::vector<std::pair<int, double>> forward_errors, adjoint_errors;
  for (int level = 0; level < levels; ++level) {
    const int n = run.cfg.n_cells << level;
    const Grid1D grid = make_grid(run.cfg.domain_lo, run.cfg.domain_hi, n, 2, run.cfg.boundary);
    const TimeGrid time = make_time_grid(run.cfg.t_final, grid.dx(), run.cfg.cfl_ratio);
    const StateField u0 = sample(grid, run.cfg.initial_data);
    const SolveParams params{burgers(), run.cfg.eps, run.cfg.gamma, std::nullopt};
    const Trajectory traj = integrate(u0, run.cfg.scheme, time, params);

    double forward_linf = 0.0;
    for (int j = 0; j < n; ++j) {
      const double exact = characteristics_solution(smooth_bump, smooth_bump_derivative, 0.5,
                                                    run.cfg.t_final, grid.center(j), 1e-13);
      forward_linf = std::max(forward_linf, std::abs(traj.final_state[j] - exact));
    }

    const AdjointSweep sweep = adjoint_sweep(traj, TerminalData{traj.final_state}, params.model);
    double adjoint_linf = 0.0;
    for (int j = 0; j < n; ++j)
      adjoint_linf = std::max(adjoint_linf, std::abs(sweep.p0[j] - u0.values[j]));

    forward_errors.emplace_back(n, forward_linf);
    adjoint_errors.emplace_back(n, adjoint_linf);
    std::printf("convergence: N=%5d forward=%.6e adjoint=%.6e\n", n, forward_linf,
                adjoint_linf);
  }

  const RateTable forward_rates = convergence_rates(forward_errors);
  const RateTable adjoint_rates = convergence_rates(adjoint_errors);
  CsvTable t;
  t.header = {"N", "forward_error", "forward_rate", "adjoint_error", "adjoint_rate"};
  for (std::size_t i = 0; i < forward_rates.rows.size(); ++i) {
    const auto& fr = forward_rates.rows[i];
    const auto& ar = adjoint_rates.rows[i];
    t.rows.push_back({std::to_string(fr.n), format_double(fr.error),
                      i == 0 ? "" : format_double(fr.rate), format_double(ar.error),
                      i == 0 ? "" : format_double(ar.rate)});
    if (i > 0)
      std::printf("convergence: N=%5d rates forward=%.3f adjoint=%.3f\n", fr.n, fr.rate,
                  ar.rate);
  }
  write_csv(out_path(run, "rates.csv"), t);
  return kExitOk;
}

// --- optimize ----------------------------------------------------------------

void write_descent_outputs(const ResolvedRun& run, const Grid1D& grid,
                           const DescentReport& report) {
  CsvTable descent;
  descent.header = {"iter", "J", "log10_J", "alpha", "grad_norm"};
  for (std::size_t k = 0; k < report.objectives.size(); ++k) {
    const double J = report.objectives[k];
    descent.rows.push_back({std::to_string(k), format_double(J),
                            J > 0.0 ? format_double(std::log10(J)) : "",
                            k == 0 ? "" : format_double(report.steps[k - 1]),
                            k == 0 ? "" : format_double(report.grad_norms[k - 1])});
  }
  write_csv(out_path(run, "descent.csv"), descent);

  CsvTable control;
  control.header = {"x", "u0"};
  for (int j = 0; j < grid.n_cells; ++j) {
    const double x = grid.center(j);
    if (!in_window(run, x)) continue;
    control.rows.push_back({format_double(x), format_double(report.control.values[j])});
  }
  write_csv(out_path(run, "control_final.csv"), control);

  write_state_final(run, grid, report.final_state.values);
}

int cmd_optimize(const ResolvedRun& run) {
  const ControlProblem problem = control_problem_from(run.cfg);
  const StateField u_init = run.cold_start
                                ? make_state(problem.grid,
                                             std::vector<double>(problem.grid.n_cells, 0.0))
                                : initial_guess(problem);
  DescentReport report;
  try {
    report = armijo_descent(problem, u_init);
  } catch (const DescentStall& stall) {
    write_descent_outputs(run, problem.grid, stall.report());
    std::fprintf(stderr, "optimize %s: %s\n", run.cfg.name.c_str(), stall.what());
    return kExitSolver;
  }

  write_descent_outputs(run, problem.grid, report);
  const double j0 = report.objectives.front();
  const double jk = report.objectives.back();
  std::printf("optimize %s: scheme=%s start=%s iterations=%zu J0=%.6e (ln %.3f) -> J=%.6e "
              "(ln %.3f) converged=%s\n",
              run.cfg.name.c_str(), scheme_name(run.cfg.scheme),
              run.cold_start ? "cold" : "warm", report.objectives.size() - 1, j0,
              j0 > 0.0 ? std::log(j0) : -INFINITY, jk, jk > 0.0 ? std::log(jk) : -INFINITY,
              report.converged ? "yes" : "no");
  return kExitOk;
}

// --- verify --------------------------------------------------------------------

int cmd_verify(std::uint64_t seed, const std::string& filter, const std::string& fault_name) {
  FaultInjection fault = FaultInjection::None;
  if (fault_name == "flip-adjoint-sign") {
    fault = FaultInjection::FlipAdjointSign;
  } else if (!fault_name.empty()) {
    throw ConfigError("unknown fault '" + fault_name + "'");
  }

  const auto results = run_verification(seed, filter, fault);
  if (results.empty()) throw ConfigError("no verification check matches filter '" + filter + "'");

  int passed = 0;
  for (const auto& r : results) {
    std::printf("[%s] %-34s metric=%7.1e threshold=%7.1e  %s\n", r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.metric, r.threshold, r.detail.c_str());
    if (r.passed) ++passed;
  }
  std::printf("verification: %d/%zu checks passed\n", passed, results.size());
  return passed == static_cast<int>(results.size()) ? kExitOk : kExitVerification;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Conservation law solver with exact discrete adjoints"};
  app.require_subcommand(1);

  RunFlags solve_flags, adjoint_flags, conv_flags, opt_flags;
  bool self_target = false;
  int levels = 5;
  bool cold_start_flag = false;

  CLI::App* solve = app.add_subcommand("solve", "forward solve, final state and mass record");
  attach_run_flags(solve, solve_flags);

  CLI::App* adjoint = app.add_subcommand("adjoint", "forward solve plus backward sweep");
  attach_run_flags(adjoint, adjoint_flags);
  adjoint->add_flag("--self-target", self_target,
                    "use the computed final state as the target (zero mismatch)");

  CLI::App* convergence =
      app.add_subcommand("convergence", "mesh-doubling error ladder against the exact solution");
  attach_run_flags(convergence, conv_flags);
  convergence->add_option("--levels", levels, "ladder height (default 5)");

  CLI::App* optimize = app.add_subcommand("optimize", "steepest descent with adjoint gradients");
  attach_run_flags(optimize, opt_flags);
  optimize->add_flag("--cold-start", cold_start_flag, "start from the zero control");

  CLI::App* verify = app.add_subcommand("verify", "structural self-checks on seeded instances");
  std::uint64_t seed = 20240817;
  std::string filter, fault_name;
  verify->add_option("--seed", seed, "RNG seed for the check instances");
  verify->add_option("--filter", filter, "run only checks whose name contains this substring");
  verify->add_option("--inject-fault", fault_name)->group("");  // testing seam, hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (solve->parsed()) return cmd_solve(resolve_run(solve_flags));
    if (adjoint->parsed()) return cmd_adjoint(resolve_run(adjoint_flags), self_target);
    if (convergence->parsed()) return cmd_convergence(resolve_run(conv_flags), levels);
    if (optimize->parsed()) {
      ResolvedRun run = resolve_run(opt_flags);
      run.cold_start = run.cold_start || cold_start_flag;
      return cmd_optimize(run);
    }
    if (verify->parsed()) return cmd_verify(seed, filter, fault_name);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const SolverError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return kExitSolver;
  } catch (const ContractViolation& e) {
    std::fprintf(stderr, "internal contract violated: %s\n", e.what());
    return kExitSolver;
  }
  return kExitConfig;
}

}  // namespace optclaw
