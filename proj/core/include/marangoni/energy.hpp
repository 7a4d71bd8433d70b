#pragma once

#include <vector>

#include "marangoni/fields.hpp"
#include "marangoni/model.hpp"

namespace marangoni {

/// One row of the energy/diagnostics trace. Energy components follow the
/// weighted total
///   E = |u|^2 + a*lambda0 |grad phi|^2 + 2 a*lambda0 int F(phi)
///       + zeta |grad theta|^2 + omega |theta|^2,
/// whose time derivative is bounded by -(diss_visc + diss_phase + diss_heat)
/// for admissible data.
struct EnergyRecord {
    double t = 0.0;

    double kinetic = 0.0;      // |u|^2
    double elastic_grad = 0.0; // a*lambda0 |grad phi|^2
    double elastic_bulk = 0.0; // 2*a*lambda0 int F(phi)
    double thermal_grad = 0.0; // zeta |grad theta|^2
    double thermal_l2 = 0.0;   // omega |theta|^2
    double total = 0.0;        // sum of the five components

    double diss_visc = 0.0;  // (nu/2) |grad u|^2
    double diss_phase = 0.0; // a*lambda0*gamma |lap phi - F'(phi)|^2
    double diss_heat = 0.0;  // k*zeta |lap theta|^2

    double a1 = 0.0; // |grad u|^2 + a*lambda0 |lap phi - F'|^2 + eta1 |lap theta|^2
    double a2 = 0.0; // same with coefficient 1 on |lap theta|^2

    double max_abs_phi = 0.0;
    double max_abs_theta = 0.0;
    double div_u_inf = 0.0;
};

/// Unweighted squared dissipation functionals of the current state.
struct Dissipation {
    double grad_u_sq = 0.0;       // |grad u|^2
    double phase_residual_sq = 0.0; // |lap phi - F'(phi)|^2
    double lap_theta_sq = 0.0;    // |lap theta|^2
};

Dissipation dissipation(const State& s, const PhysicalParams& p);

/// Full diagnostics row; eta1 weights |lap theta|^2 inside a1.
EnergyRecord total_energy(const State& s, const PhysicalParams& p, double eta1 = 1.0);

/// Relative defect of the discrete isothermal energy law between two
/// consecutive records:
///   | (E^{n+1} - E^n)/dt + D^{n+1} | / max(D^{n+1}, machine eps)
/// with E = (|u|^2 + a*lambda0|grad phi|^2 + 2 a*lambda0 int F)/2 and
/// D = nu |grad u|^2 + a*lambda0*gamma |lap phi - F'|^2 (the half-kinetic
/// convention of the isothermal system). Throws when r1.t <= r0.t.
double isothermal_residual(const EnergyRecord& r0, const EnergyRecord& r1);

/// Decay-law fit over (t_i, y_i): either y ~ C exp(-rate t) (regressing
/// log y on t) or y ~ C (1+t)^(-rate) (regressing log y on log(1+t)).
enum class DecayModel { Exponential, Algebraic };

struct DecayFit {
    double rate = 0.0;  // decay rate or algebraic power, positive for decay
    double log_c = 0.0; // intercept of the regression
    double r2 = 0.0;    // coefficient of determination
    int n_samples = 0;
    double t_start = 0.0; // fit window actually used
    double t_end = 0.0;
};

/// Least-squares fit over samples with t >= t_burn. Decay rates are
/// asymptotic statements, so the initial transient is excluded; t_burn < 0
/// selects the default burn-in of 10% of the time span. Throws
/// std::invalid_argument when fewer than 10 samples remain in the window or
/// any sample there is non-positive.
DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& y,
                   DecayModel model, double t_burn = -1.0);

} // namespace marangoni
