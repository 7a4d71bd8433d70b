/// Command-line driver: runs simulations from config files and exposes the
/// verification subcommands (manufactured-solution ladders, stationary
/// solves, perturbation stability sweeps, decay fitting, config checking).
///
/// Exit codes: 0 success, 1 configuration/usage error, 2 solver failure,
/// 3 strict-mode monitor violation.

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "marangoni/energy.hpp"
#include "marangoni/equilibrium.hpp"
#include "marangoni/initial_conditions.hpp"
#include "marangoni/mms.hpp"
#include "marangoni/monitors.hpp"
#include "marangoni/norms.hpp"
#include "marangoni/scalar_steps.hpp"
#include "marangoni/simulation.hpp"
#include "marangoni/snapshot.hpp"

namespace {

using namespace marangoni;

RunConfig config_from(const std::string& path) {
    return path.empty() ? RunConfig{} : load_config(path);
}

int cmd_run(const std::string& config_path, bool strict, bool clamp,
            const std::string& trace_override, const std::string& snapshot_override,
            bool verbose) {
    RunConfig cfg = config_from(config_path);
    if (!trace_override.empty()) cfg.trace_path = trace_override;
    if (!snapshot_override.empty()) cfg.snapshot_dir = snapshot_override;

    RunOptions opt;
    opt.strict = strict;
    opt.clamp_phi = clamp;
    opt.quiet = !verbose;

    const RunResult res = run_simulation(cfg, opt);
    const EnergyRecord final_energy =
        total_energy(res.final_state, cfg.physics(), cfg.eta1);

    std::printf("mode             %s\n", to_string(cfg.mode).c_str());
    std::printf("steps            %ld\n", res.steps);
    std::printf("final_t          %.17g\n", res.final_state.t);
    std::printf("smallness_ok     %s\n", res.smallness_ok ? "yes" : "no");
    std::printf("violation_events %ld\n", res.violation_events);
    std::printf("final_energy     %.17g\n", final_energy.total);
    if (!res.message.empty()) std::fprintf(stderr, "%s\n", res.message.c_str());
    return res.exit_code;
}

int cmd_check(const std::string& config_path) {
    const RunConfig cfg = config_from(config_path);
    const PhysicalParams p = cfg.physics();
    const State init = initial_state(cfg);
    const double theta0 = linf_norm(init.theta);
    const double threshold = smallness_threshold(p);

    std::printf("config ok\n");
    std::printf("steps               %ld\n",
                cfg.t_end > 0.0 ? static_cast<long>(std::llround(cfg.t_end / cfg.dt)) : 0L);
    std::printf("smallness_threshold %.17g\n", threshold);
    std::printf("theta0_linf         %.17g\n", theta0);
    std::printf("smallness_ok        %s\n", theta0 <= threshold ? "yes" : "no");
    std::printf("initial_cfl         %.17g\n", cfl_number(init.vel, cfg.dt));
    std::printf("initial_phi_linf    %.17g\n", linf_norm(init.phi));
    return 0;
}

MmsCase parse_mms_case(const std::string& s) {
    if (s == "heat") return MmsCase::Heat;
    if (s == "phase") return MmsCase::Phase;
    if (s == "coupled") return MmsCase::Coupled;
    if (s == "quiescent") return MmsCase::Quiescent;
    throw std::invalid_argument("unknown mms case '" + s +
                                "' (expected heat, phase, coupled or quiescent)");
}

int cmd_mms(const std::string& case_name, const std::vector<int>& grids, double dt0,
            double t_end, int dt_power) {
    const MmsReport rep =
        mms_convergence(parse_mms_case(case_name), grids, dt0, t_end, dt_power);
    std::printf("%6s %12s %14s %14s %14s\n", "n", "dt", "err_u", "err_phi", "err_theta");
    for (const MmsRung& r : rep.rungs)
        std::printf("%6d %12.5e %14.6e %14.6e %14.6e\n", r.n, r.dt, r.err_u, r.err_phi,
                    r.err_theta);
    std::printf("order_u        %.4f\n", rep.order_u);
    std::printf("order_phi      %.4f\n", rep.order_phi);
    std::printf("order_theta    %.4f\n", rep.order_theta);
    std::printf("order_combined %.4f\n", rep.order_combined);
    return 0;
}

void print_solution(const char* label, const EquilibriumSolution& sol) {
    std::printf("%s: converged=%s iterations=%d residual_l2=%.6e\n", label,
                sol.converged ? "yes" : "no", sol.iterations, sol.residual_l2);
    if (!sol.message.empty()) std::printf("%s: %s\n", label, sol.message.c_str());
}

int cmd_equilibrium(const std::string& config_path, const std::string& method, double tol,
                    const std::string& out_path, bool hessian) {
    const RunConfig cfg = config_from(config_path);
    const PhysicalParams p = cfg.physics();
    const CellField phi0 = initial_state(cfg).phi;
    if (tol <= 0.0) tol = cfg.newton_tol;

    EquilibriumSolution chosen;
    bool ok = true;
    if (method == "newton" || method == "both") {
        chosen = solve_stationary(phi0, p, tol);
        print_solution("newton", chosen);
        ok = chosen.converged;
    }
    if (method == "flow" || method == "both") {
        const EquilibriumSolution flow = gradient_flow_oracle(phi0, p, tol);
        print_solution("flow", flow);
        if (method == "both" && chosen.converged && flow.converged) {
            double d2 = 0.0;
            for (std::size_t m = 0; m < flow.phi.values.raw().size(); ++m) {
                const double d = chosen.phi.values.raw()[m] - flow.phi.values.raw()[m];
                d2 += d * d;
            }
            std::printf("cross_distance_l2 %.6e\n",
                        std::sqrt(d2 * flow.phi.grid.cell_area()));
        }
        if (method == "flow") chosen = flow;
        ok = ok && flow.converged;
    }

    if (hessian && ok)
        std::printf("hessian_min_eig %.6f\n", smallest_hessian_eigenvalue(chosen.phi, p));
    if (!out_path.empty() && ok) {
        const Grid& g = chosen.phi.grid;
        write_snapshot(out_path, {"phi", g.nx, g.ny, g.lx, g.ly, 0.0}, chosen.phi.values);
        std::printf("wrote %s\n", out_path.c_str());
    }
    return ok ? 0 : 2;
}

int cmd_stability(const std::string& config_path, const std::vector<double>& scales,
                  const std::string& phi_star_path) {
    const RunConfig base = config_from(config_path);
    const Grid grid(base.nx, base.ny, base.lx, base.ly);

    CellField phi_star(grid, DirichletBC{-1.0});
    if (phi_star_path.empty()) {
        phi_star.fill(-1.0); // the global minimizer at these boundary values
    } else {
        const auto [header, values] = read_snapshot(phi_star_path);
        if (header.nx != grid.nx || header.ny != grid.ny)
            throw std::invalid_argument("phi-star snapshot extents do not match the config");
        phi_star.values = values;
    }

    const std::vector<StabilityReport> reports =
        stability_experiment(base, phi_star, scales);
    std::printf("%10s %12s %12s %12s %14s %14s %14s %10s\n", "scale", "u0", "phi0",
                "theta0", "max_excursion", "energy_gap", "final_dist", "violations");
    for (const StabilityReport& r : reports)
        std::printf("%10.4g %12.5e %12.5e %12.5e %14.6e %14.6e %14.6e %10ld\n", r.scale,
                    r.u0_norm, r.phi0_distance, r.theta0_norm, r.max_excursion,
                    r.final_energy_gap, r.final_distance, r.violation_events);
    return 0;
}

int cmd_decay_fit(const std::string& trace_path, const std::string& column,
                  const std::string& model_name, double t_burn) {
    DecayModel model;
    if (model_name == "exp") model = DecayModel::Exponential;
    else if (model_name == "algebraic") model = DecayModel::Algebraic;
    else
        throw std::invalid_argument("unknown model '" + model_name +
                                    "' (expected exp or algebraic)");

    std::ifstream in(trace_path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open trace file '" + trace_path + "'");

    std::string line;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) header.push_back(cell);
        break;
    }
    std::size_t col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == column) col = i;
    if (col == header.size())
        throw std::invalid_argument("trace has no column named '" + column + "'");

    std::vector<double> t, y;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
        if (vals.size() != header.size())
            throw std::invalid_argument("malformed trace row: '" + line + "'");
        t.push_back(vals[0]);
        y.push_back(vals[col]);
    }

    const DecayFit fit = fit_decay(t, y, model, t_burn);
    std::printf("column    %s\n", column.c_str());
    std::printf("model     %s\n", model_name.c_str());
    std::printf("rate      %.10g\n", fit.rate);
    std::printf("log_c     %.10g\n", fit.log_c);
    std::printf("r2        %.10g\n", fit.r2);
    std::printf("n_samples %d\n", fit.n_samples);
    std::printf("window    [%.6g, %.6g]\n", fit.t_start, fit.t_end);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-difference solver for thermocapillary two-phase flow"};
    app.require_subcommand(1);

    std::string config_path;

    auto* run = app.add_subcommand("run", "Run a simulation from a config file");
    bool strict = false, clamp = false, verbose = false;
    std::string trace_override, snapshot_override;
    run->add_option("-c,--config", config_path, "Config file (defaults when omitted)");
    run->add_flag("--strict", strict, "Abort on the first monitor violation (exit 3)");
    run->add_flag("--clamp-phi", clamp,
                  "Clamp phi to [-1,1] after each step (departs from the plain scheme)");
    run->add_option("--trace", trace_override, "Override the trace output path");
    run->add_option("--snapshot-dir", snapshot_override, "Override the snapshot directory");
    run->add_flag("-v,--verbose", verbose, "Print progress lines");

    auto* check = app.add_subcommand("check", "Validate a config and report thresholds");
    check->add_option("-c,--config", config_path, "Config file (defaults when omitted)");

    auto* mms = app.add_subcommand("mms", "Manufactured-solution convergence ladder");
    std::string mms_case = "heat";
    std::vector<int> grids = {32, 64, 128};
    double dt0 = 1e-3, mms_t_end = 0.05;
    int dt_power = 2;
    mms->add_option("--case", mms_case, "heat, phase, coupled or quiescent");
    mms->add_option("--grids", grids, "Cells per direction on each rung")->delimiter(',');
    mms->add_option("--dt0", dt0, "Time step on the coarsest rung");
    mms->add_option("--t-end", mms_t_end, "Common end time");
    mms->add_option("--dt-power", dt_power, "dt scales with (n0/n)^power");

    auto* equil = app.add_subcommand("equilibrium", "Solve the stationary phase problem");
    std::string method = "newton", out_path;
    double eq_tol = 0.0;
    bool hessian = false;
    equil->add_option("-c,--config", config_path,
                      "Config supplying grid, parameters and the initial guess preset");
    equil->add_option("--method", method, "newton, flow or both");
    equil->add_option("--tol", eq_tol, "Residual tolerance (default: newton_tol)");
    equil->add_option("--out", out_path, "Write the solution as a field snapshot");
    equil->add_flag("--hessian", hessian, "Report the smallest Hessian eigenvalue");

    auto* stab = app.add_subcommand("stability", "Perturbation sweep around an equilibrium");
    std::vector<double> scales = {0.02, 0.04, 0.08, 0.16, 0.32};
    std::string phi_star_path;
    stab->add_option("-c,--config", config_path, "Base run config");
    stab->add_option("--scales", scales, "Perturbation scales")->delimiter(',');
    stab->add_option("--phi-star", phi_star_path,
                     "Equilibrium snapshot (default: uniform -1)");

    auto* fitc = app.add_subcommand("decay-fit", "Fit a decay law to a trace column");
    std::string trace_path, column = "thermal_l2", model_name = "exp";
    double t_burn = -1.0;
    fitc->add_option("trace", trace_path, "Trace CSV produced by run")->required();
    fitc->add_option("--column", column, "Column to fit");
    fitc->add_option("--model", model_name, "exp or algebraic");
    fitc->add_option("--t-burn", t_burn, "Discard samples before this time");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(config_path, strict, clamp, trace_override, snapshot_override,
                           verbose);
        if (check->parsed()) return cmd_check(config_path);
        if (mms->parsed()) return cmd_mms(mms_case, grids, dt0, mms_t_end, dt_power);
        if (equil->parsed())
            return cmd_equilibrium(config_path, method, eq_tol, out_path, hessian);
        if (stab->parsed()) return cmd_stability(config_path, scales, phi_star_path);
        if (fitc->parsed())
            return cmd_decay_fit(trace_path, column, model_name, t_burn);
    } catch (const SolverFailure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
