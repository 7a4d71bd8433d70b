#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "marangoni/model.hpp"

namespace marangoni {

/// Raised on malformed or inconsistent configuration input. Messages name
/// the offending key or field.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class RunMode { Full, Isothermal, HeatOnly, PhaseOnly };
enum class InitPreset { Flat, Bubble, Stratified, EigenmodeTheta, Random };

std::string to_string(RunMode m);
std::string to_string(InitPreset p);
RunMode parse_run_mode(const std::string& s);
InitPreset parse_init_preset(const std::string& s);

/// Complete description of one simulation run. Every field has a working
/// default; a config file only overrides what it names.
struct RunConfig {
    // Grid and time stepping
    int nx = 64;
    int ny = 64;
    double lx = 1.0;
    double ly = 1.0;
    double dt = 1e-4;
    double t_end = 1.0;

    // Physics
    double nu = 1.0;
    double gamma = 1.0;
    double k = 1.0;
    double lambda0 = 0.05;
    double a = 1.0;
    double b = 0.5;
    double alpha = 1.0;
    double g = 1.0;
    double eps = 0.05;
    double c1_estimate = 1.0;
    double omega_weight = 1.0;

    // Scheme
    double stab = 2.0;
    double eta1 = 1.0;
    double helmholtz_tol = 1e-10;
    double poisson_tol = 1e-10;
    double newton_tol = 1e-8; // stationary solves only
    int max_cg_iter = 0;      // 0: derived from the grid

    // Run selection
    RunMode mode = RunMode::Full;
    InitPreset ic = InitPreset::Bubble;
    std::uint64_t seed = 12345;

    // Initial-condition shape parameters
    double bubble_radius = 0.15;
    double bubble_cx = 0.5;
    double bubble_cy = 0.5;
    double phi_amplitude = 0.9;   // random preset: linf of the phi field
    double theta_amplitude = 0.0; // linf scale of the initial temperature
    double vel_amplitude = 0.0;   // linf scale of the initial velocity
    int random_modes = 4;         // Fourier modes per direction in random fields

    // Output
    std::string trace_path;   // empty: no trace file
    int trace_every = 1;
    std::string snapshot_dir; // empty: no snapshots
    int snapshot_every = 0;   // 0: only the final snapshot (when dir set)

    /// Physical parameters with the mode overrides applied (isothermal runs
    /// force b = 0 and alpha = 0).
    PhysicalParams physics() const;

    /// Throws ConfigError naming the first invalid field.
    void validate() const;
};

/// Parses `key = value` lines; `#` starts a comment line, blank lines are
/// skipped. Unknown and duplicate keys are errors naming the key. Missing
/// keys keep their defaults. The result is validated before returning.
RunConfig parse_config(const std::string& text);

/// Convenience wrapper reading the file at `path`.
RunConfig load_config(const std::string& path);

/// Canonical text form listing every key; parse_config(serialize_config(c))
/// reproduces c exactly (doubles are written with 17 significant digits).
std::string serialize_config(const RunConfig& cfg);

} // namespace marangoni
