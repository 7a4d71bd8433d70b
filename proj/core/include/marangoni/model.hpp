#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace marangoni {

/// Physical and model parameters of the coupled flow / phase-field / heat
/// system. Density is normalized to 1 and is not a parameter.
///
/// The mixing energy density is F(phi) = (phi^2 - 1)^2 / (4 eps^2) and the
/// capillary coefficient depends on temperature through
/// lambda(theta) = lambda0 * (a - b*theta).
struct PhysicalParams {
    double nu = 1.0;      // kinematic viscosity
    double gamma = 1.0;   // phase relaxation mobility
    double k = 1.0;       // thermal diffusivity
    double lambda0 = 0.05; // capillary coefficient scale
    double a = 1.0;       // constant part of lambda(theta)/lambda0
    double b = 0.5;       // thermal sensitivity of lambda(theta)/lambda0
    double alpha = 1.0;   // buoyancy expansion coefficient
    double g = 1.0;       // gravitational acceleration (acts along -y; the
                          // Boussinesq force alpha*g*theta points along +y)
    double eps = 0.05;    // interface thickness
    double c1_estimate = 1.0; // Sobolev embedding constant used in the
                              // small-data threshold; 1.0 on unit-scale domains
    double omega_weight = 1.0; // weight of ||theta||^2 in the total energy

    /// Throws std::invalid_argument naming the offending field.
    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(v > 0.0) || !std::isfinite(v))
                throw std::invalid_argument(std::string(name) + " must be positive");
        };
        positive(nu, "nu");
        positive(gamma, "gamma");
        positive(k, "k");
        positive(lambda0, "lambda0");
        positive(a, "a");
        positive(eps, "eps");
        positive(c1_estimate, "c1_estimate");
        positive(omega_weight, "omega_weight");
        auto finite = [](double v, const char* name) {
            if (!std::isfinite(v))
                throw std::invalid_argument(std::string(name) + " must be finite");
        };
        finite(b, "b");
        finite(alpha, "alpha");
        finite(g, "g");
    }
};

/// Double-well mixing energy density, minima at phi = +-1.
inline double potential_value(double phi, const PhysicalParams& p) {
    const double w = phi * phi - 1.0;
    return w * w / (4.0 * p.eps * p.eps);
}

/// dF/dphi = (phi^3 - phi) / eps^2.
inline double potential_derivative(double phi, const PhysicalParams& p) {
    return (phi * phi * phi - phi) / (p.eps * p.eps);
}

/// d2F/dphi2 = (3 phi^2 - 1) / eps^2.
inline double potential_second_derivative(double phi, const PhysicalParams& p) {
    return (3.0 * phi * phi - 1.0) / (p.eps * p.eps);
}

/// Temperature-dependent capillary coefficient lambda(theta).
inline double surface_tension(double theta, const PhysicalParams& p) {
    return p.lambda0 * (p.a - p.b * theta);
}

/// Vertical Boussinesq body-force density alpha * g * theta.
inline double buoyancy_density(double theta, const PhysicalParams& p) {
    return p.alpha * p.g * theta;
}

/// Largest sup-norm of the initial temperature for which the analytical
/// dissipation estimate is available:
///   ||theta_0||_inf <= (1 / (4 C1^2 |b|)) * sqrt(a * gamma * nu / (2 * lambda0)).
/// No constraint (infinity) when b = 0, since lambda is then constant.
inline double smallness_threshold(const PhysicalParams& p) {
    if (p.b == 0.0) return std::numeric_limits<double>::infinity();
    const double c1sq = p.c1_estimate * p.c1_estimate;
    return std::sqrt(p.a * p.gamma * p.nu / (2.0 * p.lambda0)) / (4.0 * c1sq * std::abs(p.b));
}

/// Weights of the temperature terms in the total energy functional.
struct EnergyWeights {
    double zeta = 0.0;  // multiplies ||grad theta||^2
    double omega = 1.0; // multiplies ||theta||^2
};

/// zeta is pinned by the dissipation balance to k*b^2*lambda0/(a*gamma);
/// omega has no closed form (it absorbs embedding constants) and is taken
/// from params.omega_weight.
inline EnergyWeights energy_weights(const PhysicalParams& p) {
    EnergyWeights w;
    w.zeta = p.k * p.b * p.b * p.lambda0 / (p.a * p.gamma);
    w.omega = p.omega_weight;
    return w;
}

} // namespace marangoni
