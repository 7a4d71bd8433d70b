#pragma once

#include <functional>
#include <string>
#include <vector>

#include "marangoni/config.hpp"
#include "marangoni/energy.hpp"
#include "marangoni/fields.hpp"
#include "marangoni/monitors.hpp"

namespace marangoni {

struct RunOptions {
    bool strict = false;     // abort with exit code 3 on the first violation
    bool clamp_phi = false;  // clamp phi into [-1,1] after each phase update;
                             // off by default since the scheme does not need it
    bool retain_trace = false; // keep all trace rows in memory
    bool quiet = true;       // suppress progress lines on stdout
};

/// One diagnostics row: energy ledger, runtime checks, and the defect of the
/// discrete isothermal energy law between this row and the previous one.
struct TraceRow {
    EnergyRecord energy;
    MonitorReport monitor;
    double isothermal_residual = 0.0;
};

struct RunResult {
    int exit_code = 0; // 0 done, 2 solver failure, 3 strict-mode violation
    State final_state;
    RunBaseline baseline;
    bool smallness_ok = true;
    long steps = 0;
    long violation_events = 0; // violations summed over all monitored steps
    std::vector<TraceRow> trace; // populated when retain_trace
    std::string message;
};

/// Column names of the trace CSV, in file order.
const std::vector<std::string>& trace_columns();

/// Runs the configured simulation: builds the initial state, steps to t_end,
/// evaluates the energy ledger and monitors each step, optionally writing
/// the CSV trace and field snapshots. Never throws for solver failures or
/// violations; those are reported through exit_code and message.
RunResult run_simulation(const RunConfig& cfg, const RunOptions& opt = {});

/// Perturbation-decay experiment around a stationary phase field: for each
/// scale, the equilibrium is perturbed by scale-sized smooth fields (phi and
/// theta bumps, a solenoidal velocity), the coupled system is run to t_end,
/// and the largest excursion plus the terminal energy gap are recorded.
struct StabilityReport {
    double scale = 0.0;
    double u0_norm = 0.0;          // initial |u|
    double phi0_distance = 0.0;    // initial |phi - phi*|
    double theta0_norm = 0.0;      // initial |theta|
    double max_excursion = 0.0;    // sup_t ( |phi-phi*| + |grad(phi-phi*)| )
    double final_energy_gap = 0.0; // | E_total(T) - 2 a lambda0 E_mix(phi*) |
    double final_distance = 0.0;   // |phi(T) - phi*|
    long violation_events = 0;
};

std::vector<StabilityReport> stability_experiment(const RunConfig& base,
                                                  const CellField& phi_star,
                                                  const std::vector<double>& scales);

} // namespace marangoni
