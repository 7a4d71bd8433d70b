#include "marangoni/mms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "marangoni/fields.hpp"
#include "marangoni/norms.hpp"
#include "marangoni/scalar_steps.hpp"

namespace marangoni {

namespace {

constexpr double pi = std::numbers::pi;

/// Reference temperature of the pure-diffusion case: two decaying Dirichlet
/// modes, so the field is not a single eigenvector of the stencil.
struct HeatReference {
    double lx = 1.0, ly = 1.0;
    double kx() const { return pi / lx; }
    double ky() const { return pi / ly; }

    double theta(double x, double y, double t) const {
        return std::exp(-t) * std::sin(kx() * x) * std::sin(ky() * y) +
               0.5 * std::exp(-2.0 * t) * std::sin(2.0 * kx() * x) * std::sin(ky() * y);
    }
    double forcing(double x, double y, double t, const PhysicalParams& p) const {
        const double m1 = std::sin(kx() * x) * std::sin(ky() * y);
        const double m2 = std::sin(2.0 * kx() * x) * std::sin(ky() * y);
        const double a1 = std::exp(-t);
        const double a2 = 0.5 * std::exp(-2.0 * t);
        const double lap1 = -(kx() * kx() + ky() * ky());
        const double lap2 = -(4.0 * kx() * kx() + ky() * ky());
        const double dtheta_dt = -a1 * m1 - 2.0 * a2 * m2;
        const double lap = a1 * lap1 * m1 + a2 * lap2 * m2;
        return dtheta_dt - p.k * lap;
    }
};

/// Reference fields of the coupled case. The velocity derives from a
/// stream function vanishing to second order on the walls, so all velocity
/// components and their tangential traces are wall-compatible; phi and theta
/// are single Dirichlet modes with time-dependent amplitudes.
struct CoupledReference {
    double lx = 1.0, ly = 1.0;
    double U = 0.15;  // stream amplitude
    double P = 0.1;   // pressure amplitude

    double kx() const { return pi / lx; }
    double ky() const { return pi / ly; }

    double tvel(double t) const { return 1.0 + 0.5 * std::sin(t); }
    double tvel_dot(double t) const { return 0.5 * std::cos(t); }
    double amp_phi(double t) const { return 0.5 + 0.2 * std::sin(t); }
    double amp_phi_dot(double t) const { return 0.2 * std::cos(t); }
    double amp_theta(double t) const { return 0.2 + 0.1 * std::cos(t); }
    double amp_theta_dot(double t) const { return -0.1 * std::sin(t); }
    double tp(double t) const { return 1.0 + 0.3 * std::cos(t); }

    double u(double x, double y, double t) const {
        const double sx = std::sin(kx() * x);
        return U * tvel(t) * ky() * sx * sx * std::sin(2.0 * ky() * y);
    }
    double v(double x, double y, double t) const {
        const double sy = std::sin(ky() * y);
        return -U * tvel(t) * kx() * std::sin(2.0 * kx() * x) * sy * sy;
    }
    double phi(double x, double y, double t) const {
        return -1.0 + amp_phi(t) * std::sin(kx() * x) * std::sin(ky() * y);
    }
    double theta(double x, double y, double t) const {
        return amp_theta(t) * std::sin(kx() * x) * std::sin(ky() * y);
    }
    double pressure(double x, double y, double t) const {
        return P * tp(t) * std::cos(kx() * x) * std::cos(ky() * y);
    }

    struct PhiDerivs {
        double f, fx, fy, fxx, fxy, fyy, ft;
    };
    PhiDerivs phi_derivs(double x, double y, double t) const {
        const double sx = std::sin(kx() * x), cx = std::cos(kx() * x);
        const double sy = std::sin(ky() * y), cy = std::cos(ky() * y);
        const double A = amp_phi(t);
        PhiDerivs d;
        d.f = -1.0 + A * sx * sy;
        d.fx = A * kx() * cx * sy;
        d.fy = A * ky() * sx * cy;
        d.fxx = -A * kx() * kx() * sx * sy;
        d.fyy = -A * ky() * ky() * sx * sy;
        d.fxy = A * kx() * ky() * cx * cy;
        d.ft = amp_phi_dot(t) * sx * sy;
        return d;
    }

    struct ThetaDerivs {
        double f, fx, fy, lap, ft;
    };
    ThetaDerivs theta_derivs(double x, double y, double t) const {
        const double sx = std::sin(kx() * x), cx = std::cos(kx() * x);
        const double sy = std::sin(ky() * y), cy = std::cos(ky() * y);
        const double B = amp_theta(t);
        ThetaDerivs d;
        d.f = B * sx * sy;
        d.fx = B * kx() * cx * sy;
        d.fy = B * ky() * sx * cy;
        d.lap = -B * (kx() * kx() + ky() * ky()) * sx * sy;
        d.ft = amp_theta_dot(t) * sx * sy;
        return d;
    }

    /// Capillary force density of the reference fields, in the same split as
    /// the discrete assembly: anisotropic part plus the theta-dependent
    /// isotropic remainder.
    void capillary(double x, double y, double t, const PhysicalParams& p,
                   double& fx_out, double& fy_out) const {
        const PhiDerivs ph = phi_derivs(x, y, t);
        const ThetaDerivs th = theta_derivs(x, y, t);

        const double lam = p.lambda0 * (p.a - p.b * th.f);
        const double lam_x = -p.lambda0 * p.b * th.fx;
        const double lam_y = -p.lambda0 * p.b * th.fy;
        const double mu = lam - p.lambda0 * p.a;

        const double fp = potential_derivative(ph.f, p);
        const double big_g = 0.5 * (ph.fx * ph.fx + ph.fy * ph.fy) + potential_value(ph.f, p);
        const double big_gx = ph.fx * ph.fxx + ph.fy * ph.fxy + fp * ph.fx;
        const double big_gy = ph.fx * ph.fxy + ph.fy * ph.fyy + fp * ph.fy;

        fx_out = -(lam_x * ph.fx * ph.fx + 2.0 * lam * ph.fx * ph.fxx) -
                 (lam_y * ph.fx * ph.fy + lam * (ph.fxy * ph.fy + ph.fx * ph.fyy)) +
                 (lam_x * big_g + mu * big_gx);
        fy_out = -(lam_x * ph.fx * ph.fy + lam * (ph.fxx * ph.fy + ph.fx * ph.fxy)) -
                 (lam_y * ph.fy * ph.fy + 2.0 * lam * ph.fy * ph.fyy) +
                 (lam_y * big_g + mu * big_gy);
    }

    double forcing_theta(double x, double y, double t, const PhysicalParams& p) const {
        const ThetaDerivs th = theta_derivs(x, y, t);
        return th.ft + u(x, y, t) * th.fx + v(x, y, t) * th.fy - p.k * th.lap;
    }

    double forcing_phi(double x, double y, double t, const PhysicalParams& p) const {
        const PhiDerivs ph = phi_derivs(x, y, t);
        const double lap = ph.fxx + ph.fyy;
        return ph.ft + u(x, y, t) * ph.fx + v(x, y, t) * ph.fy -
               p.gamma * (lap - potential_derivative(ph.f, p));
    }

    void forcing_momentum(double x, double y, double t, const PhysicalParams& p,
                          double& gu, double& gv) const {
        const double sx = std::sin(kx() * x), cx = std::cos(kx() * x);
        const double sy = std::sin(ky() * y), cy = std::cos(ky() * y);
        const double s2x = std::sin(2.0 * kx() * x), c2x = std::cos(2.0 * kx() * x);
        const double s2y = std::sin(2.0 * ky() * y), c2y = std::cos(2.0 * ky() * y);
        const double T = tvel(t), Td = tvel_dot(t);

        const double uu = U * T * ky() * sx * sx * s2y;
        const double u_t = U * Td * ky() * sx * sx * s2y;
        const double u_x = 2.0 * U * T * kx() * ky() * sx * cx * s2y;
        const double u_y = 2.0 * U * T * ky() * ky() * sx * sx * c2y;
        const double u_xx = 2.0 * U * T * kx() * kx() * ky() * c2x * s2y;
        const double u_yy = -4.0 * U * T * ky() * ky() * ky() * sx * sx * s2y;

        const double vv = -U * T * kx() * s2x * sy * sy;
        const double v_t = -U * Td * kx() * s2x * sy * sy;
        const double v_x = -2.0 * U * T * kx() * kx() * c2x * sy * sy;
        const double v_y = -U * T * kx() * ky() * s2x * s2y;
        const double v_xx = 4.0 * U * T * kx() * kx() * kx() * s2x * sy * sy;
        const double v_yy = -2.0 * U * T * kx() * ky() * ky() * s2x * c2y;

        const double p_x = -P * tp(t) * kx() * sx * cy;
        const double p_y = -P * tp(t) * ky() * cx * sy;

        double cap_x = 0.0, cap_y = 0.0;
        capillary(x, y, t, p, cap_x, cap_y);
        const double buoy = p.alpha * p.g * theta(x, y, t);

        gu = u_t + uu * u_x + vv * u_y + p_x - p.nu * (u_xx + u_yy) - cap_x;
        gv = v_t + uu * v_x + vv * v_y + p_y - p.nu * (v_xx + v_yy) - cap_y - buoy;
    }
};

struct LadderEntry {
    double h = 0.0;
    double e = 0.0;
};

double ls_order(const std::vector<LadderEntry>& pts) {
    // slope of log e against log h
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (const auto& q : pts) {
        if (!(q.e > 0.0)) continue;
        const double X = std::log(q.h), Y = std::log(q.e);
        sx += X;
        sy += Y;
        sxx += X * X;
        sxy += X * Y;
        ++n;
    }
    if (n < 2) return 0.0;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

PhysicalParams mms_params() {
    PhysicalParams p;
    p.lambda0 = 0.05;
    p.b = 0.5;
    p.eps = 0.25; // moderate interface width; keeps the stabilization shift small
    return p;
}

MmsReport mms_convergence(MmsCase mms_case, const std::vector<int>& grids, double dt0,
                          double t_end, int dt_power) {
    if (grids.size() < 2 && mms_case != MmsCase::Quiescent)
        throw std::invalid_argument("mms_convergence: need at least two rungs");
    if (!(dt0 > 0.0) || !(t_end > 0.0))
        throw std::invalid_argument("mms_convergence: dt0 and t_end must be positive");

    const PhysicalParams p = mms_params();
    MmsReport report;

    const HeatReference heat_ref;
    const CoupledReference ref;

    for (int n : grids) {
        const double ratio = static_cast<double>(n) / grids.front();
        double dt = dt0 / std::pow(ratio, dt_power);
        const long steps = std::max(1L, static_cast<long>(std::llround(t_end / dt)));
        dt = t_end / static_cast<double>(steps);

        const Grid grid(n, n, heat_ref.lx, heat_ref.ly);
        ScalarStepConfig cfg;
        cfg.dt = dt;
        cfg.helmholtz_tol = 1e-12;
        cfg.max_iter = 40 * n;

        MmsRung rung;
        rung.n = n;
        rung.dt = dt;

        if (mms_case == MmsCase::Heat) {
            CellField theta(grid, DirichletBC{0.0});
            theta.sample([&](double x, double y) { return heat_ref.theta(x, y, 0.0); });
            MacVelocity still(grid);
            CellField src(grid, DirichletBC{0.0});
            double t = 0.0;
            for (long s = 0; s < steps; ++s) {
                const double t1 = (s + 1) * dt;
                src.sample([&](double x, double y) {
                    return heat_ref.forcing(x, y, t1, p);
                });
                auto [next, rep] = heat_step(theta, still, p, cfg, &src);
                if (!rep.converged) throw SolverFailure("mms_heat", rep);
                theta = std::move(next);
                t = t1;
            }
            CellField diff(grid, DirichletBC{0.0});
            diff.sample([&](double x, double y) { return heat_ref.theta(x, y, t); });
            for (std::size_t m = 0; m < diff.values.raw().size(); ++m)
                diff.values.raw()[m] = theta.values.raw()[m] - diff.values.raw()[m];
            rung.err_theta = l2_norm(diff);
        } else if (mms_case == MmsCase::Phase) {
            CellField phi(grid, DirichletBC{-1.0});
            phi.sample([&](double x, double y) { return ref.phi(x, y, 0.0); });
            MacVelocity still(grid);
            CellField src(grid, DirichletBC{0.0});
            double t = 0.0;
            for (long s = 0; s < steps; ++s) {
                const double t1 = (s + 1) * dt;
                src.sample([&](double x, double y) {
                    // zero-velocity variant of the phase forcing
                    const auto d = ref.phi_derivs(x, y, t1);
                    return d.ft - p.gamma * (d.fxx + d.fyy - potential_derivative(d.f, p));
                });
                auto [next, rep] = phase_step(phi, still, p, cfg, &src);
                if (!rep.converged) throw SolverFailure("mms_phase", rep);
                phi = std::move(next);
                t = t1;
            }
            CellField diff(grid, DirichletBC{0.0});
            diff.sample([&](double x, double y) { return ref.phi(x, y, t); });
            for (std::size_t m = 0; m < diff.values.raw().size(); ++m)
                diff.values.raw()[m] = phi.values.raw()[m] - diff.values.raw()[m];
            rung.err_phi = l2_norm(diff);
        } else if (mms_case == MmsCase::Coupled) {
            State s(grid);
            s.phi.sample([&](double x, double y) { return ref.phi(x, y, 0.0); });
            s.theta.sample([&](double x, double y) { return ref.theta(x, y, 0.0); });
            s.pressure.sample([&](double x, double y) { return ref.pressure(x, y, 0.0); });
            for (int j = 0; j < grid.ny; ++j)
                for (int i = 0; i <= grid.nx; ++i)
                    s.vel.u(i, j) = ref.u(grid.x_face(i), grid.y_center(j), 0.0);
            for (int j = 0; j <= grid.ny; ++j)
                for (int i = 0; i < grid.nx; ++i)
                    s.vel.v(i, j) = ref.v(grid.x_center(i), grid.y_face(j), 0.0);
            s.vel.zero_boundary_faces();

            CellField src_heat(grid, DirichletBC{0.0});
            CellField src_phase(grid, DirichletBC{0.0});
            MacField src_mom(grid);
            StepSources sources;
            sources.heat = &src_heat;
            sources.phase = &src_phase;
            sources.momentum = &src_mom;

            for (long m = 0; m < steps; ++m) {
                const double t1 = s.t + dt;
                src_heat.sample([&](double x, double y) {
                    return ref.forcing_theta(x, y, t1, p);
                });
                src_phase.sample([&](double x, double y) {
                    return ref.forcing_phi(x, y, t1, p);
                });
                double gu = 0.0, gv = 0.0;
                for (int j = 0; j < grid.ny; ++j)
                    for (int i = 0; i <= grid.nx; ++i) {
                        ref.forcing_momentum(grid.x_face(i), grid.y_center(j), t1, p, gu, gv);
                        src_mom.u(i, j) = gu;
                    }
                for (int j = 0; j <= grid.ny; ++j)
                    for (int i = 0; i < grid.nx; ++i) {
                        ref.forcing_momentum(grid.x_center(i), grid.y_face(j), t1, p, gu, gv);
                        src_mom.v(i, j) = gv;
                    }
                s = coupled_step(s, p, cfg, 1e-11, nullptr, &sources);
            }

            const double tf = s.t;
            MacField vel_diff(grid);
            for (int j = 0; j < grid.ny; ++j)
                for (int i = 0; i <= grid.nx; ++i)
                    vel_diff.u(i, j) =
                        s.vel.u(i, j) - ref.u(grid.x_face(i), grid.y_center(j), tf);
            for (int j = 0; j <= grid.ny; ++j)
                for (int i = 0; i < grid.nx; ++i)
                    vel_diff.v(i, j) =
                        s.vel.v(i, j) - ref.v(grid.x_center(i), grid.y_face(j), tf);
            rung.err_u = l2_norm(vel_diff);

            CellField diff(grid, DirichletBC{0.0});
            for (int j = 0; j < grid.ny; ++j)
                for (int i = 0; i < grid.nx; ++i)
                    diff(i, j) = s.phi(i, j) - ref.phi(grid.x_center(i), grid.y_center(j), tf);
            rung.err_phi = l2_norm(diff);
            for (int j = 0; j < grid.ny; ++j)
                for (int i = 0; i < grid.nx; ++i)
                    diff(i, j) =
                        s.theta(i, j) - ref.theta(grid.x_center(i), grid.y_center(j), tf);
            rung.err_theta = l2_norm(diff);
        } else { // Quiescent
            State s(grid);
            s.phi.fill(-1.0);
            for (long m = 0; m < steps; ++m) s = coupled_step(s, p, cfg, 1e-12);
            CellField diff(grid, DirichletBC{0.0});
            for (int j = 0; j < grid.ny; ++j)
                for (int i = 0; i < grid.nx; ++i) diff(i, j) = s.phi(i, j) + 1.0;
            rung.err_phi = l2_norm(diff);
            rung.err_theta = l2_norm(s.theta);
            rung.err_u = l2_norm(s.vel);
        }

        report.rungs.push_back(rung);
    }

    if (mms_case != MmsCase::Quiescent) {
        std::vector<LadderEntry> lu, lphi, ltheta, lsum;
        for (const auto& r : report.rungs) {
            const double h = heat_ref.lx / r.n;
            if (r.err_u > 0.0) lu.push_back({h, r.err_u});
            if (r.err_phi > 0.0) lphi.push_back({h, r.err_phi});
            if (r.err_theta > 0.0) ltheta.push_back({h, r.err_theta});
            lsum.push_back({h, r.err_u + r.err_phi + r.err_theta});
        }
        report.order_u = ls_order(lu);
        report.order_phi = ls_order(lphi);
        report.order_theta = ls_order(ltheta);
        report.order_combined = ls_order(lsum);
    }
    return report;
}

} // namespace marangoni
