#include "marangoni/scalar_steps.hpp"

#include <stdexcept>

#include "marangoni/flow.hpp"
#include "marangoni/operators.hpp"

namespace marangoni {

namespace {

void check_step_args(const CellField& f, const MacVelocity& w, const ScalarStepConfig& cfg) {
    if (!(f.grid == w.grid)) throw std::invalid_argument("scalar step: grid mismatch");
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("scalar step: dt must be positive");
}

} // namespace

std::pair<CellField, PoissonSolveReport> heat_step(
    const CellField& theta, const MacVelocity& w, const PhysicalParams& p,
    const ScalarStepConfig& cfg, const CellField* source) {
    check_step_args(theta, w, cfg);
    const Grid& g = theta.grid;

    CellField adv = advect_upwind(w, theta);
    Array2D rhs(g.nx, g.ny);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            rhs(i, j) = theta(i, j) - cfg.dt * adv(i, j) +
                        (source ? cfg.dt * (*source)(i, j) : 0.0);

    return solve_helmholtz_cc(1.0, p.k * cfg.dt, rhs, theta.bc, g,
                              cfg.helmholtz_tol, cfg.max_iter, &theta.values);
}

std::pair<CellField, PoissonSolveReport> phase_step(
    const CellField& phi, const MacVelocity& w, const PhysicalParams& p,
    const ScalarStepConfig& cfg, const CellField* source) {
    check_step_args(phi, w, cfg);
    if (cfg.stab < 0.0) throw std::invalid_argument("phase_step: stab must be nonnegative");
    const Grid& g = phi.grid;
    const double shift = cfg.stab / (p.eps * p.eps);

    CellField adv = advect_upwind(w, phi);
    Array2D rhs(g.nx, g.ny);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double c = phi(i, j);
            rhs(i, j) = c + cfg.dt * (-adv(i, j) -
                                      p.gamma * (potential_derivative(c, p) - shift * c) +
                                      (source ? (*source)(i, j) : 0.0));
        }

    return solve_helmholtz_cc(1.0 + p.gamma * cfg.dt * shift, p.gamma * cfg.dt, rhs,
                              phi.bc, g, cfg.helmholtz_tol, cfg.max_iter, &phi.values);
}

State coupled_step(const State& s, const PhysicalParams& p,
                   const ScalarStepConfig& cfg, double poisson_tol,
                   StepReports* reports, const StepSources* sources) {
    State next(s.grid);
    next.t = s.t + cfg.dt;
    next.phi.bc = s.phi.bc;
    next.theta.bc = s.theta.bc;

    StepReports rep;

    auto [theta_new, rep_heat] =
        heat_step(s.theta, s.vel, p, cfg, sources ? sources->heat : nullptr);
    rep.heat = rep_heat;
    if (!rep_heat.converged) throw SolverFailure("heat", rep_heat);

    auto [phi_new, rep_phase] =
        phase_step(s.phi, s.vel, p, cfg, sources ? sources->phase : nullptr);
    rep.phase = rep_phase;
    if (!rep_phase.converged) throw SolverFailure("phase", rep_phase);

    ForceField force = capillary_force(phi_new, theta_new, p);
    auto [u_star, mom_reports] =
        predict_velocity(s.vel, theta_new, force, cfg.dt, p, cfg.helmholtz_tol,
                         cfg.max_iter, sources ? sources->momentum : nullptr);
    rep.momentum_u = mom_reports.first;
    rep.momentum_v = mom_reports.second;
    if (!rep.momentum_u.converged) throw SolverFailure("momentum_u", rep.momentum_u);
    if (!rep.momentum_v.converged) throw SolverFailure("momentum_v", rep.momentum_v);

    CellField p_new(s.grid, DirichletBC{0.0});
    auto [u_new, rep_pressure] =
        project(u_star, cfg.dt, poisson_tol, &s.pressure, &p_new, cfg.max_iter);
    rep.pressure = rep_pressure;
    if (!rep_pressure.converged) throw SolverFailure("pressure", rep_pressure);

    next.vel = std::move(u_new);
    next.pressure = std::move(p_new);
    next.phi = std::move(phi_new);
    next.theta = std::move(theta_new);
    if (reports) *reports = rep;
    return next;
}

} // namespace marangoni
