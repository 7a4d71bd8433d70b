#pragma once

#include <utility>

#include "marangoni/fields.hpp"
#include "marangoni/linear_solvers.hpp"
#include "marangoni/model.hpp"

namespace marangoni {

/// Face-sampled capillary force density
///   f_i = -d_j [ lambda(theta) d_i(phi) d_j(phi) ]
///         + d_i [ (lambda(theta) - lambda0*a) (|grad phi|^2/2 + F(phi)) ],
/// i.e. the divergence of the anisotropic part of the capillary stress plus
/// the temperature-dependent remainder of its isotropic part. The constant
/// isotropic part is a pure gradient and is absorbed by the pressure.
/// Assembly is conservative: normal stresses at cell centers, shear stress
/// at nodes with corner-averaged gradients. Boundary faces carry zero force.
ForceField capillary_force(const CellField& phi, const CellField& theta,
                           const PhysicalParams& p);

/// Advances velocity by explicit centered advection, explicit body forces
/// (given force field plus vertical Boussinesq buoyancy alpha*g*theta) and
/// implicit viscosity:
///   (I - nu dt lap) u* = u^n + dt ( -(u.grad)u + force + buoyancy + source ).
/// Walls are no-slip; boundary-normal faces of the result are zero.
/// Returns the predicted velocity and the two component solve reports.
std::pair<MacVelocity, std::pair<PoissonSolveReport, PoissonSolveReport>> predict_velocity(
    const MacVelocity& vel, const CellField& theta, const ForceField& force,
    double dt, const PhysicalParams& p, double tol, int max_iter = 0,
    const MacField* source = nullptr);

/// Pressure Poisson solve of the projection: lap p = div(u*)/dt with
/// homogeneous Neumann walls, zero-mean right-hand side and solution.
/// The warm start (previous pressure) is optional.
std::pair<CellField, PoissonSolveReport> pressure_poisson(
    const MacVelocity& u_star, double dt, double tol,
    const CellField* warm_start = nullptr, int max_iter = 0);

/// Removes the discrete gradient part of u*: u = u* - dt grad p with p from
/// pressure_poisson. The result has linf(divergence) <= 10*tol and unchanged
/// (zero) boundary faces. When pressure_out is given it receives p.
std::pair<MacVelocity, PoissonSolveReport> project(
    const MacVelocity& u_star, double dt, double tol,
    const CellField* warm_start = nullptr, CellField* pressure_out = nullptr,
    int max_iter = 0);

} // namespace marangoni
