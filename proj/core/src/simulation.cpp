#include "marangoni/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "marangoni/equilibrium.hpp"
#include "marangoni/initial_conditions.hpp"
#include "marangoni/norms.hpp"
#include "marangoni/random_fields.hpp"
#include "marangoni/scalar_steps.hpp"
#include "marangoni/snapshot.hpp"

namespace marangoni {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trace_header(std::ofstream& out) {
    out << "# marangoni-trace v1\n";
    const auto& cols = trace_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) out << ',';
        out << cols[i];
    }
    out << '\n';
}

void write_trace_row(std::ofstream& out, const TraceRow& row) {
    const EnergyRecord& e = row.energy;
    const MonitorReport& m = row.monitor;
    out << fmt17(e.t) << ',' << fmt17(e.kinetic) << ',' << fmt17(e.elastic_grad) << ','
        << fmt17(e.elastic_bulk) << ',' << fmt17(e.thermal_grad) << ','
        << fmt17(e.thermal_l2) << ',' << fmt17(e.total) << ',' << fmt17(e.diss_visc)
        << ',' << fmt17(e.diss_phase) << ',' << fmt17(e.diss_heat) << ',' << fmt17(e.a1)
        << ',' << fmt17(e.a2) << ',' << fmt17(row.isothermal_residual) << ','
        << fmt17(m.max_abs_phi) << ',' << fmt17(m.max_abs_theta) << ','
        << fmt17(m.div_u_inf) << ',' << fmt17(m.cfl) << ',' << fmt17(m.lambda_min) << ','
        << (m.smallness_ok ? 1 : 0) << ',' << m.violations.size() << '\n';
}

void write_state_snapshots(const std::string& dir, const State& s, const std::string& tag) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto path = [&](const char* field) {
        return (fs::path(dir) / (std::string(field) + "_" + tag + ".dat")).string();
    };
    const Grid& g = s.grid;
    write_snapshot(path("phi"), {"phi", g.nx, g.ny, g.lx, g.ly, s.t}, s.phi.values);
    write_snapshot(path("theta"), {"theta", g.nx, g.ny, g.lx, g.ly, s.t}, s.theta.values);
    write_snapshot(path("pressure"), {"pressure", g.nx, g.ny, g.lx, g.ly, s.t},
                   s.pressure.values);
    write_snapshot(path("u"), {"u", g.nx + 1, g.ny, g.lx, g.ly, s.t}, s.vel.u);
    write_snapshot(path("v"), {"v", g.nx, g.ny + 1, g.lx, g.ly, s.t}, s.vel.v);
}

std::string step_tag(long step) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%08ld", step);
    return buf;
}

} // namespace

const std::vector<std::string>& trace_columns() {
    static const std::vector<std::string> cols = {
        "t", "kinetic", "elastic_grad", "elastic_bulk", "thermal_grad", "thermal_l2",
        "total", "diss_visc", "diss_phase", "diss_heat", "a1", "a2",
        "isothermal_residual", "max_abs_phi", "max_abs_theta", "div_u_inf", "cfl",
        "lambda_min", "smallness_ok", "violations"};
    return cols;
}

RunResult run_simulation(const RunConfig& cfg, const RunOptions& opt) {
    cfg.validate();
    const PhysicalParams params = cfg.physics();

    RunResult result;
    State state = initial_state(cfg);
    result.baseline.theta0_linf = linf_norm(state.theta);
    result.smallness_ok = result.baseline.theta0_linf <= smallness_threshold(params);

    MonitorTolerances mtol;
    mtol.helmholtz_tol = cfg.helmholtz_tol;
    mtol.poisson_tol = cfg.poisson_tol;
    mtol.dt = cfg.dt;

    ScalarStepConfig scfg;
    scfg.dt = cfg.dt;
    scfg.stab = cfg.stab;
    scfg.helmholtz_tol = cfg.helmholtz_tol;
    scfg.max_iter = cfg.max_cg_iter;

    std::ofstream trace_file;
    if (!cfg.trace_path.empty()) {
        trace_file.open(cfg.trace_path, std::ios::binary);
        if (!trace_file)
            throw ConfigError("cannot open trace file '" + cfg.trace_path + "'");
        write_trace_header(trace_file);
    }

    const long n_steps = cfg.t_end > 0.0
                             ? static_cast<long>(std::llround(cfg.t_end / cfg.dt))
                             : 0;

    EnergyRecord prev_energy;
    bool have_prev = false;

    auto emit = [&](const State& s, long step) -> bool {
        TraceRow row;
        row.energy = total_energy(s, params, cfg.eta1);
        row.monitor = check_state(s, params, result.baseline, mtol);
        if (have_prev && row.energy.t > prev_energy.t)
            row.isothermal_residual = isothermal_residual(prev_energy, row.energy);
        prev_energy = row.energy;
        have_prev = true;

        result.violation_events += static_cast<long>(row.monitor.violations.size());
        const bool bad = !row.monitor.violations.empty();

        const bool cadence = step % cfg.trace_every == 0 || step == n_steps;
        if (trace_file.is_open() && cadence) write_trace_row(trace_file, row);
        if (opt.retain_trace && cadence) result.trace.push_back(row);

        if (bad && opt.strict) {
            const Violation& v = row.monitor.violations.front();
            result.message = "monitor violation at t=" + fmt17(s.t) + ": " + v.check +
                             " value " + fmt17(v.value) + " exceeds " + fmt17(v.threshold);
            return false;
        }
        return true;
    };

    if (!emit(state, 0)) {
        result.exit_code = 3;
        result.final_state = std::move(state);
        return result;
    }
    if (!cfg.snapshot_dir.empty() && cfg.snapshot_every > 0)
        write_state_snapshots(cfg.snapshot_dir, state, step_tag(0));

    MacVelocity still(state.grid);
    for (long step = 1; step <= n_steps; ++step) {
        try {
            switch (cfg.mode) {
                case RunMode::Full:
                case RunMode::Isothermal: {
                    state = coupled_step(state, params, scfg, cfg.poisson_tol);
                    break;
                }
                case RunMode::HeatOnly: {
                    auto [theta_new, rep] = heat_step(state.theta, state.vel, params, scfg);
                    if (!rep.converged) throw SolverFailure("heat", rep);
                    state.theta = std::move(theta_new);
                    state.t += cfg.dt;
                    break;
                }
                case RunMode::PhaseOnly: {
                    auto [phi_new, rep] = phase_step(state.phi, still, params, scfg);
                    if (!rep.converged) throw SolverFailure("phase", rep);
                    state.phi = std::move(phi_new);
                    state.t += cfg.dt;
                    break;
                }
            }
        } catch (const SolverFailure& e) {
            result.exit_code = 2;
            result.message = std::string(e.what()) + " (iterations " +
                             std::to_string(e.report.iterations) + ", residual " +
                             fmt17(e.report.residual) + ")";
            result.final_state = std::move(state);
            result.steps = step - 1;
            return result;
        }

        if (opt.clamp_phi)
            for (double& v : state.phi.values.raw()) v = std::clamp(v, -1.0, 1.0);

        result.steps = step;
        if (!emit(state, step)) {
            result.exit_code = 3;
            result.final_state = std::move(state);
            return result;
        }
        if (!cfg.snapshot_dir.empty() && cfg.snapshot_every > 0 &&
            step % cfg.snapshot_every == 0)
            write_state_snapshots(cfg.snapshot_dir, state, step_tag(step));
    }

    if (!cfg.snapshot_dir.empty())
        write_state_snapshots(cfg.snapshot_dir, state, "final");

    result.final_state = std::move(state);
    return result;
}

std::vector<StabilityReport> stability_experiment(const RunConfig& base,
                                                  const CellField& phi_star,
                                                  const std::vector<double>& scales) {
    base.validate();
    const PhysicalParams params = base.physics();
    const Grid grid(base.nx, base.ny, base.lx, base.ly);
    if (!(phi_star.grid == grid))
        throw std::invalid_argument("stability_experiment: phi_star grid mismatch");

    const double equilibrium_energy =
        2.0 * params.a * params.lambda0 * mixing_energy(phi_star, params);

    ScalarStepConfig scfg;
    scfg.dt = base.dt;
    scfg.stab = base.stab;
    scfg.helmholtz_tol = base.helmholtz_tol;
    scfg.max_iter = base.max_cg_iter;

    const Array2D phi_bump = smooth_random_cells(grid, base.seed, base.random_modes);
    const Array2D theta_bump = smooth_random_cells(grid, base.seed + 1, base.random_modes);

    MonitorTolerances mtol;
    mtol.helmholtz_tol = base.helmholtz_tol;
    mtol.poisson_tol = base.poisson_tol;
    mtol.dt = base.dt;
    RunBaseline baseline;

    std::vector<StabilityReport> reports;
    for (double scale : scales) {
        State s(grid);
        s.phi.bc = phi_star.bc;
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                s.phi(i, j) = phi_star(i, j) + scale * phi_bump(i, j);
                s.theta(i, j) = scale * theta_bump(i, j);
            }
        s.vel = random_solenoidal_velocity(grid, base.seed + 2, base.random_modes, scale);
        baseline.theta0_linf = linf_norm(s.theta);

        StabilityReport rep;
        rep.scale = scale;

        auto phi_distance = [&](const State& st) {
            CellField e(grid, DirichletBC{0.0});
            for (std::size_t m = 0; m < e.values.raw().size(); ++m)
                e.values.raw()[m] = st.phi.values.raw()[m] - phi_star.values.raw()[m];
            return l2_norm(e);
        };
        auto excursion = [&](const State& st) {
            CellField e(grid, DirichletBC{0.0});
            for (std::size_t m = 0; m < e.values.raw().size(); ++m)
                e.values.raw()[m] = st.phi.values.raw()[m] - phi_star.values.raw()[m];
            return l2_norm(e) + h1_seminorm(e);
        };
        rep.u0_norm = l2_norm(s.vel);
        rep.phi0_distance = phi_distance(s);
        rep.theta0_norm = l2_norm(s.theta);
        rep.max_excursion = excursion(s);

        const long n_steps = static_cast<long>(std::llround(base.t_end / base.dt));
        for (long step = 1; step <= n_steps; ++step) {
            s = coupled_step(s, params, scfg, base.poisson_tol);
            rep.max_excursion = std::max(rep.max_excursion, excursion(s));
            const MonitorReport mon = check_state(s, params, baseline, mtol);
            rep.violation_events += static_cast<long>(mon.violations.size());
        }

        const EnergyRecord final_energy = total_energy(s, params, base.eta1);
        rep.final_energy_gap = std::abs(final_energy.total - equilibrium_energy);
        CellField diff(grid, DirichletBC{0.0});
        for (std::size_t m = 0; m < diff.values.raw().size(); ++m)
            diff.values.raw()[m] = s.phi.values.raw()[m] - phi_star.values.raw()[m];
        rep.final_distance = l2_norm(diff);
        reports.push_back(rep);
    }
    return reports;
}

} // namespace marangoni
