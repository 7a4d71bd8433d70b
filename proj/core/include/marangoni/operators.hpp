#pragma once

#include "marangoni/fields.hpp"

namespace marangoni {

/// Two-point face gradient of a cell field. Interior faces use the adjacent
/// cells; wall faces use the ghost rule, giving 2*(interior - bc)/h there.
/// Exact for fields sampled from affine functions at interior faces.
MacField gradient_cc(const CellField& f);

/// Cell-centered divergence of a face field: the net face flux per cell area.
/// Together with gradient_cc this forms an exact summation-by-parts pair.
CellField divergence_mac(const MacField& w);

/// Standard 5-point Laplacian with the Dirichlet ghost rule of CellField.
CellField laplacian_cc(const CellField& f);

/// First-order upwind evaluation of (w . grad f) at cell centers. Face
/// velocities are averaged to the center separately per direction, and the
/// upwind one-sided difference uses ghost values at the walls.
CellField advect_upwind(const MacField& w, const CellField& f);

/// Discrete curl d(fy)/dx - d(fx)/dy at interior grid nodes (corner points).
/// Returns an (nx+1) x (ny+1) array; entries on the outermost node rings are
/// set to zero since they would need data outside the domain.
/// Annihilates exact face gradients of cell fields at interior nodes.
Array2D curl_at_corners(const MacField& f);

/// Velocity induced by a stream function sampled at grid nodes:
/// u = d(psi)/dy, v = -d(psi)/dx, one-sided over each face.
/// The result is discretely divergence free to rounding, and has zero
/// boundary-normal faces whenever psi is constant along each wall.
MacVelocity velocity_from_stream(const Array2D& psi, const Grid& grid);

} // namespace marangoni
