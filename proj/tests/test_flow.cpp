/// Capillary stress assembly, the provisional velocity step, and the
/// pressure projection: exact zero cases, 1D-profile curl-freeness, the
/// vector-Laplacian eigenmode relation, gradient recovery, and divergence
/// bounds after projection.

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "marangoni/flow.hpp"
#include "marangoni/norms.hpp"
#include "marangoni/operators.hpp"
#include "marangoni/random_fields.hpp"

using namespace marangoni;

namespace {

constexpr double pi = std::numbers::pi;

MacField random_faces(const Grid& g, std::uint64_t seed) {
    DetRng rng(seed);
    MacField w(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) w.u(i, j) = rng.symmetric();
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) w.v(i, j) = rng.symmetric();
    return w;
}

// Interior gradient of a cell field with zero normal component on the walls,
// the discrete adjoint-compatible gradient for the Neumann Poisson problem.
MacField neumann_gradient(const CellField& q) {
    const Grid& g = q.grid;
    MacField grad(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i)
            grad.u(i, j) = (q(i, j) - q(i - 1, j)) / g.dx();
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            grad.v(i, j) = (q(i, j) - q(i, j - 1)) / g.dy();
    return grad;
}

double kinetic_energy(const MacVelocity& w) {
    const double n = l2_norm(w);
    return 0.5 * n * n;
}

} // namespace

TEST_CASE("capillary_force vanishes identically on the pure phase") {
    const Grid g(24, 16, 1.2, 0.8);
    PhysicalParams p;
    CellField phi(g, DirichletBC{-1.0}, -1.0);
    CellField theta(g, DirichletBC{0.0});
    theta.values = smooth_random_cells(g, 41, 3);
    const ForceField f = capillary_force(phi, theta, p);
    for (double v : f.u.raw()) CHECK(v == 0.0);
    for (double v : f.v.raw()) CHECK(v == 0.0);
}

TEST_CASE("capillary_force of a 1D interface is curl-free away from the walls") {
    // With constant surface tension (b=0) the stress of an x-only profile is
    // a pure x-gradient, constant along y; every discrete curl contribution
    // cancels exactly on corners at least two cells from the walls. The wall
    // rows see the bc mismatch of the +1 plateau and are excluded.
    PhysicalParams p;
    p.b = 0.0;
    p.eps = 0.05;

    auto window_curl = [&](int n) {
        const Grid g(n, n, 1.0, 1.0);
        CellField phi(g, DirichletBC{-1.0});
        const double w = std::sqrt(2.0) * p.eps;
        phi.sample([&](double x, double) { return std::tanh((x - 0.5) / w); });
        CellField theta(g, DirichletBC{0.0});
        const ForceField f = capillary_force(phi, theta, p);
        const Array2D curl = curl_at_corners(f);
        double fmax = 0.0;
        for (double v : f.u.raw()) fmax = std::max(fmax, std::abs(v));
        double cmax = 0.0;
        for (int j = 2; j <= g.ny - 2; ++j)
            for (int i = 2; i <= g.nx - 2; ++i)
                cmax = std::max(cmax, std::abs(curl(i, j)));
        return std::pair{cmax, fmax};
    };

    auto [c128, f128] = window_curl(128);
    CHECK(c128 <= 1e-2);                    // the advertised bound
    CHECK(c128 <= 1e-12 * f128 / 0.0078);   // exact cancellation to rounding
    auto [c256, f256] = window_curl(256);
    CHECK(c256 <= 1e-2);
}

TEST_CASE("capillary_force at theta=0 matches the constant-tension formula bit for bit") {
    const Grid g(32, 24, 1.0, 0.75);
    CellField phi(g, DirichletBC{-1.0});
    phi.values = smooth_random_cells(g, 55, 4);
    CellField theta(g, DirichletBC{0.0});

    PhysicalParams warm;
    warm.b = 0.5;
    PhysicalParams frozen = warm;
    frozen.b = 0.0;

    const ForceField a = capillary_force(phi, theta, warm);
    const ForceField b = capillary_force(phi, theta, frozen);
    for (std::size_t n = 0; n < a.u.size(); ++n) CHECK(a.u.raw()[n] == b.u.raw()[n]);
    for (std::size_t n = 0; n < a.v.size(); ++n) CHECK(a.v.raw()[n] == b.v.raw()[n]);
}

TEST_CASE("predict_velocity keeps the rest state at rest") {
    const Grid g(16, 16, 1.0, 1.0);
    PhysicalParams p;
    MacVelocity vel(g);
    CellField theta(g, DirichletBC{0.0});
    ForceField force(g);
    auto [ustar, reports] = predict_velocity(vel, theta, force, 1e-3, p, 1e-12);
    CHECK(reports.first.converged);
    CHECK(reports.second.converged);
    for (double v : ustar.u.raw()) CHECK(v == 0.0);
    for (double v : ustar.v.raw()) CHECK(v == 0.0);
}

TEST_CASE("predict_velocity damps a vector-Laplacian eigenmode by 1/(1+nu dt mu)") {
    const Grid g(32, 24, 1.0, 0.75);
    PhysicalParams p;
    p.nu = 0.8;
    const double dt = 1e-4;

    // Small amplitude keeps the quadratic advection term below the tolerance.
    const double amp = 1e-6;
    MacVelocity vel(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i)
            vel.u(i, j) = amp * std::sin(2.0 * pi * g.x_face(i) / g.lx) *
                          std::sin(pi * g.y_center(j) / g.ly);

    // Eigenvalue oracle: apply the pinned/reflected face stencil to the mode.
    auto lap_u = [&](int i, int j) {
        auto at = [&](int ii, int jj) -> double {
            if (ii < 0 || ii > g.nx) return 0.0;
            if (jj < 0) return -vel.u(ii, 0);
            if (jj >= g.ny) return -vel.u(ii, g.ny - 1);
            return vel.u(ii, jj);
        };
        return (at(i + 1, j) - 2.0 * vel.u(i, j) + at(i - 1, j)) / (g.dx() * g.dx()) +
               (at(i, j + 1) - 2.0 * vel.u(i, j) + at(i, j - 1)) / (g.dy() * g.dy());
    };
    const double mu_a = -lap_u(5, 4) / vel.u(5, 4);
    const double mu_b = -lap_u(3, 0) / vel.u(3, 0); // wall row exercises the ghost
    REQUIRE(mu_a == doctest::Approx(mu_b).epsilon(1e-11));

    CellField theta(g, DirichletBC{0.0});
    ForceField force(g);
    auto [ustar, reports] = predict_velocity(vel, theta, force, dt, p, 1e-13);
    REQUIRE(reports.first.converged);

    const double factor = 1.0 / (1.0 + p.nu * dt * mu_a);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i)
            CHECK(ustar.u(i, j) == doctest::Approx(factor * vel.u(i, j)).epsilon(1e-8));
    for (double v : ustar.v.raw()) CHECK(std::abs(v) <= 1e-18);
}

TEST_CASE("predict_velocity buoyancy lifts a warm interior") {
    const Grid g(20, 20, 1.0, 1.0);
    PhysicalParams p; // alpha = g = 1
    MacVelocity vel(g);
    CellField theta(g, DirichletBC{0.0}, 0.3);
    ForceField force(g);
    auto [ustar, reports] = predict_velocity(vel, theta, force, 1e-3, p, 1e-12);
    REQUIRE(reports.second.converged);
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) CHECK(ustar.v(i, j) > 0.0);
    for (int i = 0; i < g.nx; ++i) {
        CHECK(ustar.v(i, 0) == 0.0);
        CHECK(ustar.v(i, g.ny) == 0.0);
    }
}

TEST_CASE("pressure_poisson returns zero pressure for solenoidal input") {
    const Grid g(32, 32, 1.0, 1.0);
    MacVelocity w = random_solenoidal_velocity(g, 61, 4, 1.0);
    auto [pfield, report] = pressure_poisson(w, 1e-3, 1e-12);
    CHECK(report.converged);
    CHECK(linf_norm(pfield) <= 1e-9);
}

TEST_CASE("pressure_poisson recovers the potential of a gradient field") {
    const Grid g(48, 36, 1.0, 0.75);
    const double dt = 1e-2;
    const double tol = 1e-12;

    CellField q(g, DirichletBC{0.0});
    q.sample([&](double x, double y) {
        return std::cos(pi * x / g.lx) * std::cos(pi * y / g.ly);
    });
    MacField w = neumann_gradient(q);
    for (auto& v : w.u.raw()) v *= dt;
    for (auto& v : w.v.raw()) v *= dt;

    auto [pfield, report] = pressure_poisson(w, dt, tol);
    CHECK(report.converged);
    CellField diff(g, DirichletBC{0.0});
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) diff(i, j) = pfield(i, j) - q(i, j);
    CHECK(l2_norm(diff) <= 10.0 * tol);
}

TEST_CASE("pressure_poisson converges within 10 nx iterations at 64^2") {
    const Grid g(64, 64, 1.0, 1.0);
    MacField w = random_faces(g, 71);
    auto [pfield, report] = pressure_poisson(w, 1e-3, 1e-10);
    CHECK(report.converged);
    CHECK(report.iterations <= 10 * g.nx);
}

TEST_CASE("project removes gradients and pins the divergence") {
    const Grid g(40, 40, 1.0, 1.0);
    const double dt = 0.1;
    const double tol = 1e-10;

    SUBCASE("divergence-free input passes through") {
        MacVelocity w = random_solenoidal_velocity(g, 81, 4, 1.0);
        auto [out, report] = project(w, dt, tol);
        CHECK(report.converged);
        double change = 0.0;
        for (std::size_t n = 0; n < w.u.size(); ++n)
            change = std::max(change, std::abs(out.u.raw()[n] - w.u.raw()[n]));
        for (std::size_t n = 0; n < w.v.size(); ++n)
            change = std::max(change, std::abs(out.v.raw()[n] - w.v.raw()[n]));
        CHECK(change <= 1e-9);
    }

    SUBCASE("pure gradient input projects to nearly zero") {
        CellField q(g, DirichletBC{0.0});
        q.sample([&](double x, double y) {
            return std::cos(pi * x / g.lx) * std::cos(2.0 * pi * y / g.ly);
        });
        MacField w = neumann_gradient(q);
        auto [out, report] = project(w, dt, tol);
        CHECK(report.converged);
        CHECK(component_max(out).u <= 10.0 * tol * linf_norm(q) / dt);
        CHECK(component_max(out).v <= 10.0 * tol * linf_norm(q) / dt);
    }

    SUBCASE("any input leaves with divergence at most 10 tol") {
        MacField w = random_faces(g, 91);
        CellField pressure(g, DirichletBC{0.0});
        auto [out, report] = project(w, dt, tol, nullptr, &pressure);
        CHECK(report.converged);
        CHECK(linf_norm(divergence_mac(out)) <= 10.0 * tol);

        // zero-mean pressure comes back through the out parameter
        double mean = 0.0;
        for (double v : pressure.values.raw()) mean += v;
        CHECK(std::abs(mean) / pressure.values.size() <= 1e-12);

        SUBCASE("projection is idempotent up to solver tolerance") {
            auto [out2, report2] = project(out, dt, tol);
            CHECK(report2.converged);
            double change = 0.0;
            for (std::size_t n = 0; n < out.u.size(); ++n)
                change = std::max(change, std::abs(out2.u.raw()[n] - out.u.raw()[n]));
            CHECK(change <= 10.0 * tol);
        }
    }
}

TEST_CASE("full momentum step dissipates kinetic energy in the frozen-phase channel") {
    const Grid g(32, 32, 1.0, 1.0);
    PhysicalParams p;
    const double dt = 1e-3;
    MacVelocity vel = random_solenoidal_velocity(g, 101, 4, 0.5);
    CellField theta(g, DirichletBC{0.0});
    ForceField force(g); // frozen uniform phase: no capillary force

    const double e0 = kinetic_energy(vel);
    auto [ustar, reports] = predict_velocity(vel, theta, force, dt, p, 1e-12);
    REQUIRE(reports.first.converged);
    REQUIRE(reports.second.converged);
    auto [unew, rep] = project(ustar, dt, 1e-11);
    REQUIRE(rep.converged);
    CHECK(kinetic_energy(unew) < e0);
}
