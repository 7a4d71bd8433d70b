#pragma once

#include <string>

#include "marangoni/fields.hpp"
#include "marangoni/model.hpp"

namespace marangoni {

enum class SolutionMethod { Newton, GradientFlow };

/// Result of a stationary phase-field solve of -lap phi + F'(phi) = 0 with
/// phi = -1 on the walls.
struct EquilibriumSolution {
    CellField phi;
    double residual_l2 = 0.0; // |lap phi - F'(phi)| at exit
    int iterations = 0;
    bool converged = false;
    SolutionMethod method = SolutionMethod::Newton;
    std::string message; // set on stagnation, suggesting the other route
};

/// Damped Newton iteration with a sparse direct inner solve and backtracking
/// line search on the residual norm. Stops when |residual| <= tol.
EquilibriumSolution solve_stationary(const CellField& phi_init, const PhysicalParams& p,
                                     double tol, int max_iter = 60);

/// Heuristic second-order classification of a stationary point: estimates the
/// smallest eigenvalue of the Hessian -lap + F''(phi) with a fixed number of
/// power iterations on the Gershgorin-shifted operator. Positive means the
/// point looks like a local minimizer; the estimate is diagnostic only.
double smallest_hessian_eigenvalue(const CellField& phi, const PhysicalParams& p,
                                   int iterations = 50);

/// Independent route to the same stationary problem: the stabilized phase
/// step with zero velocity is iterated until |phi^{m+1} - phi^m|/dt <= tol.
/// The discrete mixing energy int(|grad phi|^2/2 + F) is checked to be
/// non-increasing along the iteration. dt = 0 picks eps^2/(2 gamma).
EquilibriumSolution gradient_flow_oracle(const CellField& phi_init, const PhysicalParams& p,
                                         double tol, double dt = 0.0,
                                         long max_steps = 4000000L);

/// Discrete mixing energy E(phi) = int( |grad phi|^2 / 2 + F(phi) ).
double mixing_energy(const CellField& phi, const PhysicalParams& p);

/// Distance of a state from the quiescent equilibrium (0, phi_inf, 0),
/// mirroring the norms in which trajectories converge.
struct SteadyStateDistance {
    double du = 0.0;     // |u| + |grad u|
    double dphi = 0.0;   // |e| + |grad e| + |lap e|, e = phi - phi_inf
    double dtheta = 0.0; // |theta| + |lap theta|
};

SteadyStateDistance steady_state_distance(const State& s, const CellField& phi_inf,
                                          const PhysicalParams& p);

} // namespace marangoni
