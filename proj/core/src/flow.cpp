#include "marangoni/flow.hpp"

#include <stdexcept>

#include "marangoni/operators.hpp"

namespace marangoni {

ForceField capillary_force(const CellField& phi, const CellField& theta,
                           const PhysicalParams& p) {
    if (!(phi.grid == theta.grid)) throw std::invalid_argument("capillary_force: grid mismatch");
    const Grid& g = phi.grid;
    const int nx = g.nx, ny = g.ny;
    const double idx = 1.0 / g.dx();
    const double idy = 1.0 / g.dy();

    const MacField grad = gradient_cc(phi);

    // Normal stresses at cell centers. Txx/Tyy carry the temperature-dependent
    // isotropic remainder with coefficient mu = lambda(theta) - lambda0*a.
    Array2D txx(nx, ny), tyy(nx, ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const double px = 0.5 * (grad.u(i, j) + grad.u(i + 1, j));
            const double py = 0.5 * (grad.v(i, j) + grad.v(i, j + 1));
            const double lam = surface_tension(theta(i, j), p);
            const double mu = lam - p.lambda0 * p.a;
            const double iso = 0.5 * (px * px + py * py) + potential_value(phi(i, j), p);
            txx(i, j) = lam * px * px - mu * iso;
            tyy(i, j) = lam * py * py - mu * iso;
        }

    // Shear stress at nodes. The boundary value of phi is constant along each
    // wall, so the tangential gradient and hence Txy vanish on wall nodes.
    Array2D txy(nx + 1, ny + 1, 0.0);
    for (int j = 1; j < ny; ++j)
        for (int i = 1; i < nx; ++i) {
            const double px = 0.5 * (grad.u(i, j - 1) + grad.u(i, j));
            const double py = 0.5 * (grad.v(i - 1, j) + grad.v(i, j));
            const double th = 0.25 * (theta(i - 1, j - 1) + theta(i, j - 1) +
                                      theta(i - 1, j) + theta(i, j));
            txy(i, j) = surface_tension(th, p) * px * py;
        }

    ForceField f(g);
    for (int j = 0; j < ny; ++j)
        for (int i = 1; i < nx; ++i)
            f.u(i, j) = -(txx(i, j) - txx(i - 1, j)) * idx -
                        (txy(i, j + 1) - txy(i, j)) * idy;
    for (int j = 1; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            f.v(i, j) = -(tyy(i, j) - tyy(i, j - 1)) * idy -
                        (txy(i + 1, j) - txy(i, j)) * idx;
    return f;
}

namespace {

/// Centered (u.grad)u on interior x faces; tangential wall ghosts reflect.
Array2D advect_u(const MacVelocity& w) {
    const Grid& g = w.grid;
    const double i2dx = 0.5 / g.dx();
    const double i2dy = 0.5 / g.dy();
    Array2D adv(g.nx + 1, g.ny, 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) {
            const double uc = w.u(i, j);
            const double vc = 0.25 * (w.v(i - 1, j) + w.v(i, j) +
                                      w.v(i - 1, j + 1) + w.v(i, j + 1));
            const double dudx = (w.u(i + 1, j) - w.u(i - 1, j)) * i2dx;
            const double up = j + 1 < g.ny ? w.u(i, j + 1) : -w.u(i, j);
            const double dn = j > 0 ? w.u(i, j - 1) : -w.u(i, j);
            const double dudy = (up - dn) * i2dy;
            adv(i, j) = uc * dudx + vc * dudy;
        }
    return adv;
}

Array2D advect_v(const MacVelocity& w) {
    const Grid& g = w.grid;
    const double i2dx = 0.5 / g.dx();
    const double i2dy = 0.5 / g.dy();
    Array2D adv(g.nx, g.ny + 1, 0.0);
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double vc = w.v(i, j);
            const double uc = 0.25 * (w.u(i, j - 1) + w.u(i + 1, j - 1) +
                                      w.u(i, j) + w.u(i + 1, j));
            const double rt = i + 1 < g.nx ? w.v(i + 1, j) : -w.v(i, j);
            const double lt = i > 0 ? w.v(i - 1, j) : -w.v(i, j);
            const double dvdx = (rt - lt) * i2dx;
            const double dvdy = (w.v(i, j + 1) - w.v(i, j - 1)) * i2dy;
            adv(i, j) = uc * dvdx + vc * dvdy;
        }
    return adv;
}

} // namespace

std::pair<MacVelocity, std::pair<PoissonSolveReport, PoissonSolveReport>> predict_velocity(
    const MacVelocity& vel, const CellField& theta, const ForceField& force,
    double dt, const PhysicalParams& p, double tol, int max_iter,
    const MacField* source) {
    if (!(vel.grid == theta.grid) || !(vel.grid == force.grid))
        throw std::invalid_argument("predict_velocity: grid mismatch");
    if (!(dt > 0.0)) throw std::invalid_argument("predict_velocity: dt must be positive");
    const Grid& g = vel.grid;

    const Array2D adv_u = advect_u(vel);
    const Array2D adv_v = advect_v(vel);

    Array2D rhs_u(g.nx + 1, g.ny, 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i)
            rhs_u(i, j) = vel.u(i, j) + dt * (-adv_u(i, j) + force.u(i, j) +
                                              (source ? source->u(i, j) : 0.0));

    Array2D rhs_v(g.nx, g.ny + 1, 0.0);
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double buoy = buoyancy_density(0.5 * (theta(i, j - 1) + theta(i, j)), p);
            rhs_v(i, j) = vel.v(i, j) + dt * (-adv_v(i, j) + force.v(i, j) + buoy +
                                              (source ? source->v(i, j) : 0.0));
        }

    auto [u_new, rep_u] =
        solve_helmholtz_face(FaceSet::XFaces, p.nu * dt, rhs_u, g, tol, max_iter);
    auto [v_new, rep_v] =
        solve_helmholtz_face(FaceSet::YFaces, p.nu * dt, rhs_v, g, tol, max_iter);

    MacVelocity out(g);
    out.u = std::move(u_new);
    out.v = std::move(v_new);
    return {std::move(out), {rep_u, rep_v}};
}

std::pair<CellField, PoissonSolveReport> pressure_poisson(
    const MacVelocity& u_star, double dt, double tol,
    const CellField* warm_start, int max_iter) {
    if (!(dt > 0.0)) throw std::invalid_argument("pressure_poisson: dt must be positive");
    const CellField div = divergence_mac(u_star);
    Array2D rhs(div.grid.nx, div.grid.ny);
    const double idt = 1.0 / dt;
    for (int j = 0; j < div.grid.ny; ++j)
        for (int i = 0; i < div.grid.nx; ++i) rhs(i, j) = div(i, j) * idt;
    return solve_poisson_neumann(rhs, u_star.grid, tol, dt, max_iter,
                                 warm_start ? &warm_start->values : nullptr);
}

std::pair<MacVelocity, PoissonSolveReport> project(
    const MacVelocity& u_star, double dt, double tol,
    const CellField* warm_start, CellField* pressure_out, int max_iter) {
    auto [p, report] = pressure_poisson(u_star, dt, tol, warm_start, max_iter);
    const Grid& g = u_star.grid;
    const double idx = 1.0 / g.dx();
    const double idy = 1.0 / g.dy();
    MacVelocity out = u_star;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i)
            out.u(i, j) -= dt * (p(i, j) - p(i - 1, j)) * idx;
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.v(i, j) -= dt * (p(i, j) - p(i, j - 1)) * idy;
    out.zero_boundary_faces();
    if (pressure_out) *pressure_out = std::move(p);
    return {std::move(out), report};
}

} // namespace marangoni
