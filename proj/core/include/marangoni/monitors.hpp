#pragma once

#include <string>
#include <vector>

#include "marangoni/fields.hpp"
#include "marangoni/model.hpp"

namespace marangoni {

/// Quantities fixed by the initial data that the runtime checks compare against.
struct RunBaseline {
    double theta0_linf = 0.0;
};

/// Tolerances of the runtime checks. The theta bound inherits the linear
/// solver tolerance (the implicit diffusion step is a contraction only up to
/// it); the divergence bound inherits the projection tolerance.
struct MonitorTolerances {
    double phi_overshoot = 1e-3;
    double helmholtz_tol = 1e-10;
    double poisson_tol = 1e-10;
    double dt = 0.0; // for the CFL number; 0 disables the CFL check
};

struct Violation {
    std::string check;
    double value = 0.0;
    double threshold = 0.0;
};

struct MonitorReport {
    double max_abs_phi = 0.0;
    double max_abs_theta = 0.0;
    double div_u_inf = 0.0;
    double cfl = 0.0;
    double lambda_min = 0.0;
    bool smallness_ok = true;
    bool all_finite = true;
    std::vector<Violation> violations;
};

/// Advective CFL number dt*(|u|max/dx + |v|max/dy).
double cfl_number(const MacVelocity& w, double dt);

/// Evaluates all runtime checks. Purely observational: no field is modified.
/// Checks (violation recorded when the bound fails):
///   phi_max:      max|phi| <= 1 + phi_overshoot
///   theta_max:    max|theta| <= theta0_linf + 10*helmholtz_tol
///   divergence:   linf(div u) <= 10*poisson_tol
///   cfl:          cfl <= 1 (only when dt > 0)
///   lambda_min:   min lambda(theta) > 0
///   non_finite:*  every entry of every field is finite
MonitorReport check_state(const State& s, const PhysicalParams& p,
                          const RunBaseline& baseline, const MonitorTolerances& tol);

} // namespace marangoni
