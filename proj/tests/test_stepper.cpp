#include <cmath>
#include <vector>

#include "doctest.h"
#include "optclaw/reference.hpp"
#include "optclaw/stepper.hpp"

using namespace optclaw;

namespace {

RhsFn scalar_decay(double lambda) {
  return [lambda](const std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = lambda * v[i];
    return out;
  };
}

}  // namespace

TEST_CASE("runge-kutta steps reproduce their stability polynomials on y' = ly") {
  // One step on y' = l y with l dt = z multiplies y by the truncated
  // exponential R(z); frozen values for z = -0.2.
  const std::vector<double> y0 = {1.0};
  const double z = -0.2;

  const RkStepResult s3 = ssprk3_step(y0, 1.0, scalar_decay(z));
  CHECK(s3.y_next[0] == doctest::Approx(0.8186666666666667).epsilon(1e-15));
  CHECK(s3.stages.size() == 3);
  CHECK(s3.stages[0][0] == 1.0);

  const RkStepResult s4 = erk4_step(y0, 1.0, scalar_decay(z));
  CHECK(s4.y_next[0] == doctest::Approx(0.8187333333333333).epsilon(1e-15));
  CHECK(s4.stages.size() == 4);
  CHECK(s4.stages[0][0] == 1.0);
}

TEST_CASE("shu-osher combination constants") {
  CHECK(kSsprk3Stage2[0] == 0.75);
  CHECK(kSsprk3Stage2[1] == 0.25);
  CHECK(kSsprk3Stage3[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
  CHECK(kSsprk3Stage3[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-16));
}

TEST_CASE("zero rhs leaves the state unchanged") {
  const std::vector<double> y0 = {0.125, -3.5, 7.0};
  const RhsFn zero = [](const std::vector<double>& v) {
    return std::vector<double>(v.size(), 0.0);
  };
  // the shu-osher recombination (1/3) y + (2/3) y rounds within one ulp
  const auto ssp = ssprk3_step(y0, 0.7, zero).y_next;
  for (std::size_t i = 0; i < y0.size(); ++i)
    CHECK(ssp[i] == doctest::Approx(y0[i]).epsilon(1e-15));
  // the classical tableau adds dt/6 * 0 and stays bitwise identical
  CHECK(erk4_step(y0, 0.7, zero).y_next == y0);
}

TEST_CASE("lax-friedrichs hand step") {
  // y = [0, 2, 0, 0], dx = 1, gamma = 0.5, dt = 0.2 (CFL limit is 0.25):
  // interface fluxes are [0, -1.5, 3.5, 0, 0], so the update reads
  // [0.3, 1.0, 0.7, 0].
  const FluxModel m = burgers();
  const Grid1D grid = make_grid(0.0, 4.0, 4);
  const StateField y = make_state(grid, {0.0, 2.0, 0.0, 0.0});
  const StateField next = lf_step(y, 0.2, 0.5, m);
  CHECK(next.values[0] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(next.values[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(next.values[2] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(next.values[3] == 0.0);
}

TEST_CASE("engquist-osher hand step") {
  // Same spike with dt = 0.25 (exactly at the CFL limit): only the
  // interface downwind of the spike carries flux eo(2, 0) = 2.
  const FluxModel m = burgers();
  const Grid1D grid = make_grid(0.0, 4.0, 4);
  const StateField y = make_state(grid, {0.0, 2.0, 0.0, 0.0});
  const StateField next = eo_step(y, 0.25, m);
  CHECK(next.values[0] == 0.0);
  CHECK(next.values[1] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(next.values[2] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(next.values[3] == 0.0);
}

TEST_CASE("lax-friedrichs hand step with an extension halo") {
  // y = [1, 2, 0, 1], dx = 1, gamma = 0.5, dt = 0.2. The halo repeats the
  // edge cells, so the boundary interfaces carry f(1) = 0.5 with no jump
  // penalty. Interior fluxes are [0, 3.5, -1], giving [1.1, 1.3, 0.9, 0.7].
  const FluxModel m = burgers();
  const Grid1D grid = make_grid(0.0, 4.0, 4, 2, Boundary::Extend);
  const StateField y = make_state(grid, {1.0, 2.0, 0.0, 1.0});
  const StateField next = lf_step(y, 0.2, 0.5, m);
  CHECK(next.values[0] == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(next.values[1] == doctest::Approx(1.3).epsilon(1e-15));
  CHECK(next.values[2] == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(next.values[3] == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("engquist-osher hand step with an extension halo") {
  // y = [0.5, 2, -1, 0], dt = 0.2 (CFL limit 0.25). The left edge sees
  // eo(0.5, 0.5) = 0.125 on both sides and stays put; the right edge state
  // is 0, so both of its fluxes vanish.
  const FluxModel m = burgers();
  const Grid1D grid = make_grid(0.0, 4.0, 4, 2, Boundary::Extend);
  const StateField y = make_state(grid, {0.5, 2.0, -1.0, 0.0});
  const StateField next = eo_step(y, 0.2, m);
  CHECK(next.values[0] == 0.5);
  CHECK(next.values[1] == doctest::Approx(1.525).epsilon(1e-15));
  CHECK(next.values[2] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(next.values[3] == 0.0);
}

TEST_CASE("extension halo makes constants exact fixed points of both steps") {
  // All interface fluxes agree, so the update subtracts an exact zero.
  const FluxModel m = burgers();
  const Grid1D grid = make_grid(0.0, 4.0, 4, 2, Boundary::Extend);
  const StateField y = make_state(grid, {0.8, 0.8, 0.8, 0.8});
  CHECK(lf_step(y, 0.2, 0.5, m).values == y.values);
  CHECK(eo_step(y, 0.2, m).values == y.values);
}

TEST_CASE("fully discrete steps reject CFL violations up front") {
  const FluxModel m = burgers();
  const Grid1D grid = make_grid(0.0, 4.0, 4);
  const StateField y = make_state(grid, {0.0, 2.0, 0.0, 0.0});
  CHECK_THROWS_AS(eo_step(y, 0.3, m), ConfigError);       // limit 0.25
  CHECK_THROWS_AS(lf_step(y, 0.3, 0.5, m), ConfigError);  // limit 0.25
  CHECK_THROWS_AS(lf_step(y, 0.1, 0.0, m), ConfigError);  // gamma out of range
  CHECK_THROWS_AS(lf_step(y, 0.1, 1.5, m), ConfigError);
}

TEST_CASE("time grid construction") {
  const TimeGrid even = make_time_grid(0.5, 0.01, 0.25);
  CHECK(even.n_steps == 200);
  CHECK(even.dt == doctest::Approx(0.0025).epsilon(1e-15));
  CHECK(even.n_steps * even.dt == doctest::Approx(0.5).epsilon(1e-15));

  const TimeGrid ragged = make_time_grid(0.5, 0.03, 0.5);
  CHECK(ragged.n_steps == 33);  // 0.5 / 0.015 rounds down to 33
  CHECK(ragged.n_steps * ragged.dt == doctest::Approx(0.5).epsilon(1e-15));

  const TimeGrid trivial = make_time_grid(0.0, 0.01, 0.25);
  CHECK(trivial.n_steps == 0);
  CHECK(trivial.dt == 0.0);

  CHECK_THROWS_AS(make_time_grid(-1.0, 0.01, 0.25), ConfigError);
  CHECK_THROWS_AS(make_time_grid(0.5, 0.01, 0.0), ConfigError);
}

TEST_CASE("trajectory records the stage states each scheme needs") {
  const FluxModel m = burgers();
  const Grid1D grid = make_grid(-1.0, 1.0, 32);
  const StateField u0 = sample(grid, [](double x) { return 0.4 * smooth_bump(x); });
  const TimeGrid time = make_time_grid(0.05, grid.dx(), 0.25);
  SolveParams params{m, kWenoEpsDefault, 0.5, std::nullopt};

  const Trajectory ssp = integrate(u0, Scheme::Weno3Ssprk3, time, params);
  CHECK(static_cast<int>(ssp.steps.size()) == time.n_steps);
  CHECK(ssp.steps[0].stages.size() == 3);
  CHECK(ssp.alpha > 0.0);

  const Trajectory rk4 = integrate(u0, Scheme::Weno3Erk4, time, params);
  CHECK(rk4.steps[0].stages.size() == 4);

  const Trajectory lf = integrate(u0, Scheme::LaxFriedrichs, time, params);
  CHECK(lf.steps[0].stages.size() == 1);

  const Trajectory eo = integrate(u0, Scheme::EngquistOsher, time, params);
  CHECK(eo.steps[0].stages.size() == 1);
}

TEST_CASE("integrate_final matches the recorded march bitwise") {
  const FluxModel m = burgers();
  const Grid1D grid = make_grid(-1.0, 1.0, 48);
  const StateField u0 = sample(grid, [](double x) { return 0.3 + 0.2 * smooth_bump(x); });
  const TimeGrid time = make_time_grid(0.1, grid.dx(), 0.25);
  const SolveParams params{m, kWenoEpsDefault, 0.5, std::nullopt};
  for (Scheme scheme : {Scheme::Weno3Ssprk3, Scheme::Weno3Erk4, Scheme::LaxFriedrichs,
                        Scheme::EngquistOsher}) {
    const Trajectory full = integrate(u0, scheme, time, params);
    const StateField final_only = integrate_final(u0, scheme, time, params);
    CHECK(full.final_state == final_only.values);
  }
}

TEST_CASE("diverging march reports the failing step") {
  // A dt far past the stable region makes the WENO march blow up; the
  // error carries the step index at which the state left the finite range.
  const FluxModel m = burgers();
  const Grid1D grid = make_grid(-1.0, 1.0, 64);
  const StateField u0 = sample(grid, [](double x) { return smooth_bump(x); });
  TimeGrid time;
  time.t_final = 40.0;
  time.n_steps = 10;
  time.dt = 4.0;
  time.cfl_ratio = time.dt / grid.dx();
  const SolveParams params{m, kWenoEpsDefault, 0.5, std::nullopt};
  CHECK_THROWS_AS(integrate(u0, Scheme::Weno3Ssprk3, time, params), SolverError);
}

TEST_CASE("scheme names round-trip through the parser") {
  for (Scheme s : {Scheme::Weno3Ssprk3, Scheme::Weno3Erk4, Scheme::LaxFriedrichs,
                   Scheme::EngquistOsher}) {
    const auto parsed = parse_scheme(scheme_name(s));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == s);
  }
  CHECK(!parse_scheme("upwind5").has_value());
}
