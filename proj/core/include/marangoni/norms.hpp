#pragma once

#include "marangoni/fields.hpp"
#include "marangoni/model.hpp"

namespace marangoni {

/// Midpoint-rule integral of a cell field over the domain.
double integral_cc(const CellField& f);

/// Midpoint-rule L2 norm of a cell field: sqrt(sum f^2 dx dy).
double l2_norm(const CellField& f);

/// Max-norm over cells.
double linf_norm(const CellField& f);

/// L2 inner product of two cell fields.
double inner_cc(const CellField& f, const CellField& g);

/// Face-quadrature L2 norm of a face field. Wall faces carry half weight:
/// with this convention <laplacian_cc(f), f> = -h1_seminorm(f)^2 holds
/// exactly for zero-Dirichlet cell fields, so discrete energy budgets close
/// without boundary defects. Velocities have zero wall faces, for which the
/// convention is immaterial.
double l2_norm(const MacField& w);

/// Face-quadrature inner product with the same half-weight convention.
double inner_faces(const MacField& w1, const MacField& w2);

/// Max-norm over all faces of both components.
double linf_norm(const MacField& w);

/// Separate per-component max-norms (|u|_inf, |v|_inf).
struct ComponentMax {
    double u = 0.0;
    double v = 0.0;
};
ComponentMax component_max(const MacField& w);

/// H1 seminorm of a cell field: face-quadrature L2 norm of gradient_cc(f).
double h1_seminorm(const CellField& f);

/// Squared discrete velocity-gradient norm compatible with the staggered
/// viscous Laplacian: <lap_u, u> + <lap_v, v> = -velocity_grad_norm_sq(w)
/// exactly for no-slip fields. Normal derivatives are cell differences of
/// face values (pinned to zero at the walls); tangential derivatives live at
/// nodes and use reflected ghosts, with half weight on wall nodes.
double velocity_grad_norm_sq(const MacVelocity& w);

/// Midpoint integral of the mixing energy density F(phi).
double potential_integral(const CellField& phi, const PhysicalParams& p);

} // namespace marangoni
