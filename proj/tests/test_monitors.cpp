/// Tests for the runtime state checks: maximum principles, incompressibility,
/// CFL, surface-tension positivity, and finiteness reporting.

#include <cmath>
#include <limits>
#include <string>

#include "doctest.h"

#include "marangoni/model.hpp"
#include "marangoni/monitors.hpp"
#include "marangoni/random_fields.hpp"

using namespace marangoni;

namespace {

State rest_state(const Grid& g) {
    State s(g);
    for (double& v : s.phi.values.raw()) v = -1.0; // State() fills zeros
    return s;
}

long count_check(const MonitorReport& rep, const std::string& name) {
    long n = 0;
    for (const Violation& v : rep.violations)
        if (v.check == name) ++n;
    return n;
}

} // namespace

TEST_CASE("cfl number follows the advective formula") {
    Grid g(100, 100, 1.0, 1.0); // dx = dy = 0.01
    MacVelocity w(g);
    CHECK(cfl_number(w, 0.005) == 0.0);

    w.u(50, 50) = 1.0;
    CHECK(cfl_number(w, 0.005) == 0.5);

    SUBCASE("doubling dt doubles the cfl exactly") {
        w.v(30, 40) = 0.7;
        const double c = cfl_number(w, 0.005);
        CHECK(cfl_number(w, 0.01) == 2.0 * c);
    }

    SUBCASE("anisotropic grids weight the directions separately") {
        Grid ga(10, 40, 1.0, 1.0); // dx = 0.1, dy = 0.025
        MacVelocity wa(ga);
        wa.u(5, 5) = 1.0;
        wa.v(5, 5) = 1.0;
        CHECK(cfl_number(wa, 0.01) == doctest::Approx(0.01 * (10.0 + 40.0)).epsilon(1e-14));
    }
}

TEST_CASE("rest equilibrium passes every check") {
    Grid g(16, 16, 1.0, 1.0);
    const State s = rest_state(g);
    PhysicalParams p;
    RunBaseline baseline;
    MonitorTolerances tol;
    tol.dt = 1e-3;

    const MonitorReport rep = check_state(s, p, baseline, tol);
    CHECK(rep.violations.empty());
    CHECK(rep.all_finite);
    CHECK(rep.max_abs_phi == 1.0);
    CHECK(rep.max_abs_theta == 0.0);
    CHECK(rep.div_u_inf == 0.0);
    CHECK(rep.cfl == 0.0);
    CHECK(rep.lambda_min == surface_tension(0.0, p));
    CHECK(rep.smallness_ok); // theta0 = 0 is below any positive threshold
}

TEST_CASE("phi overshoot is recorded with value and threshold") {
    Grid g(16, 16, 1.0, 1.0);
    State s = rest_state(g);
    s.phi(7, 9) = 1.1;
    PhysicalParams p;

    const MonitorReport rep = check_state(s, p, RunBaseline{}, MonitorTolerances{});
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].check == "phi_max");
    CHECK(rep.violations[0].value == 1.1);
    CHECK(rep.violations[0].threshold == 1.0 + 1e-3);
    CHECK(rep.max_abs_phi == 1.1);
}

TEST_CASE("theta exceeding its initial bound trips the maximum principle") {
    Grid g(16, 16, 1.0, 1.0);
    State s = rest_state(g);
    s.theta(3, 3) = 0.505; // 1% above the recorded initial bound
    PhysicalParams p;
    RunBaseline baseline;
    baseline.theta0_linf = 0.5;
    MonitorTolerances tol;

    const MonitorReport rep = check_state(s, p, baseline, tol);
    REQUIRE(count_check(rep, "theta_max") == 1);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].value == 0.505);
    CHECK(rep.violations[0].threshold == 0.5 + 10.0 * tol.helmholtz_tol);

    // The smallness flag compares the initial bound against the parameter
    // threshold: 0.5 is inside the regime at the default lambda0 but not
    // once the capillary scale is raised.
    CHECK(baseline.theta0_linf <= smallness_threshold(p));
    CHECK(rep.smallness_ok);
    PhysicalParams strong = p;
    strong.lambda0 = 1.0;
    CHECK(baseline.theta0_linf > smallness_threshold(strong));
    CHECK_FALSE(check_state(s, strong, baseline, tol).smallness_ok);

    // Staying at the recorded bound is not a violation.
    s.theta(3, 3) = 0.5;
    CHECK(check_state(s, p, baseline, tol).violations.empty());
}

TEST_CASE("an injected nan yields one finiteness violation naming the field") {
    Grid g(12, 12, 1.0, 1.0);
    PhysicalParams p;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    SUBCASE("theta") {
        State s = rest_state(g);
        s.theta(3, 4) = nan;
        const MonitorReport rep = check_state(s, p, RunBaseline{}, MonitorTolerances{});
        CHECK_FALSE(rep.all_finite);
        CHECK(count_check(rep, "non_finite:theta") == 1);
        CHECK(count_check(rep, "non_finite:phi") == 0);
        CHECK(count_check(rep, "non_finite:u") == 0);
    }

    SUBCASE("u velocity") {
        State s = rest_state(g);
        s.vel.u(5, 5) = nan;
        const MonitorReport rep = check_state(s, p, RunBaseline{}, MonitorTolerances{});
        CHECK_FALSE(rep.all_finite);
        CHECK(count_check(rep, "non_finite:u") == 1);
        CHECK(count_check(rep, "non_finite:theta") == 0);
    }

    SUBCASE("infinities count as non-finite too") {
        State s = rest_state(g);
        s.pressure(0, 0) = std::numeric_limits<double>::infinity();
        const MonitorReport rep = check_state(s, p, RunBaseline{}, MonitorTolerances{});
        CHECK_FALSE(rep.all_finite);
        CHECK(count_check(rep, "non_finite:pressure") == 1);
    }
}

TEST_CASE("nonzero divergence is flagged against the projection tolerance") {
    Grid g(8, 8, 1.0, 1.0);
    State s = rest_state(g);
    s.vel.u(4, 4) = 0.1; // one interior face: divergence 0.1/dx in two cells
    PhysicalParams p;
    MonitorTolerances tol; // dt = 0 keeps the cfl check disabled

    const MonitorReport rep = check_state(s, p, RunBaseline{}, tol);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].check == "divergence");
    CHECK(rep.violations[0].value == doctest::Approx(0.1 * 8.0).epsilon(1e-14));
    CHECK(rep.violations[0].threshold == 10.0 * tol.poisson_tol);
}

TEST_CASE("cfl above one is flagged without a divergence side effect") {
    Grid g(8, 8, 1.0, 1.0);
    State s = rest_state(g);
    // Stream-function noise is discretely divergence-free, so only the cfl
    // check can fire.
    s.vel = random_solenoidal_velocity(g, 3, 2, 3.0);
    PhysicalParams p;
    MonitorTolerances tol;
    tol.dt = 1.0;

    const MonitorReport rep = check_state(s, p, RunBaseline{}, tol);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].check == "cfl");
    CHECK(rep.violations[0].value == rep.cfl);
    CHECK(rep.violations[0].threshold == 1.0);
    CHECK(rep.cfl > 1.0);
}

TEST_CASE("nonpositive surface tension is flagged") {
    Grid g(8, 8, 1.0, 1.0);
    State s = rest_state(g);
    PhysicalParams p; // lambda(theta) = lambda0*(a - b*theta), b = 0.5
    for (double& v : s.theta.values.raw()) v = 3.0;
    RunBaseline baseline;
    baseline.theta0_linf = 3.0; // keeps theta_max quiet

    const MonitorReport rep = check_state(s, p, baseline, MonitorTolerances{});
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].check == "lambda_min");
    CHECK(rep.violations[0].threshold == 0.0);
    CHECK(rep.lambda_min == doctest::Approx(surface_tension(3.0, p)).epsilon(1e-14));
    CHECK(rep.lambda_min < 0.0);
}

TEST_CASE("checks are observational and deterministic") {
    Grid g(12, 10, 1.2, 0.9);
    State s = rest_state(g);
    s.vel = random_solenoidal_velocity(g, 9, 3, 0.4);
    const Array2D bump = smooth_random_cells(g, 10, 3);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            s.theta(i, j) = 0.1 * bump(i, j);
            s.phi(i, j) = -1.0 + 0.2 * bump(i, j);
        }
    PhysicalParams p;
    RunBaseline baseline;
    baseline.theta0_linf = 0.1;
    MonitorTolerances tol;
    tol.dt = 1e-3;

    const State before = s;
    const MonitorReport r1 = check_state(s, p, baseline, tol);
    const MonitorReport r2 = check_state(s, p, baseline, tol);

    for (std::size_t m = 0; m < before.vel.u.raw().size(); ++m)
        CHECK(s.vel.u.raw()[m] == before.vel.u.raw()[m]);
    for (std::size_t m = 0; m < before.vel.v.raw().size(); ++m)
        CHECK(s.vel.v.raw()[m] == before.vel.v.raw()[m]);
    for (std::size_t m = 0; m < before.phi.values.raw().size(); ++m) {
        CHECK(s.phi.values.raw()[m] == before.phi.values.raw()[m]);
        CHECK(s.theta.values.raw()[m] == before.theta.values.raw()[m]);
        CHECK(s.pressure.values.raw()[m] == before.pressure.values.raw()[m]);
    }

    CHECK(r1.max_abs_phi == r2.max_abs_phi);
    CHECK(r1.max_abs_theta == r2.max_abs_theta);
    CHECK(r1.div_u_inf == r2.div_u_inf);
    CHECK(r1.cfl == r2.cfl);
    CHECK(r1.lambda_min == r2.lambda_min);
    CHECK(r1.violations.size() == r2.violations.size());
}
