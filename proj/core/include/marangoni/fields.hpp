#pragma once

#include <cassert>
#include <functional>

#include "marangoni/array2d.hpp"
#include "marangoni/grid.hpp"

namespace marangoni {

/// Constant Dirichlet boundary value applied on the whole wall boundary.
/// Ghost cells are linear reflections: ghost = 2*value - interior, so the
/// boundary value is attained at the wall midpoint to second order.
struct DirichletBC {
    double value = 0.0;
};

/// Cell-centered scalar field together with its wall boundary condition.
struct CellField {
    Grid grid;
    DirichletBC bc;
    Array2D values;

    CellField() = default;
    CellField(const Grid& g, DirichletBC b = {}, double fill = 0.0)
        : grid(g), bc(b), values(g.nx, g.ny, fill) {}

    double& operator()(int i, int j) { return values(i, j); }
    double operator()(int i, int j) const { return values(i, j); }

    /// Value at (i, j) extended by the ghost rule when the index leaves the grid.
    /// Only one layer of ghosts is ever needed by the 5-point stencils.
    double ghosted(int i, int j) const {
        if (i < 0) return 2.0 * bc.value - values(0, j);
        if (i >= grid.nx) return 2.0 * bc.value - values(grid.nx - 1, j);
        if (j < 0) return 2.0 * bc.value - values(i, 0);
        if (j >= grid.ny) return 2.0 * bc.value - values(i, grid.ny - 1);
        return values(i, j);
    }

    void fill(double v) { values.fill(v); }

    void sample(const std::function<double(double, double)>& f) {
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i)
                values(i, j) = f(grid.x_center(i), grid.y_center(j));
    }
};

/// Face-valued vector field on the MAC grid: x component on vertical faces
/// ((nx+1) x ny), y component on horizontal faces (nx x (ny+1)).
/// Serves both for velocities and for face-sampled gradients/forces.
struct MacField {
    Grid grid;
    Array2D u; // x component, (nx+1) x ny
    Array2D v; // y component, nx x (ny+1)

    MacField() = default;
    explicit MacField(const Grid& g)
        : grid(g), u(g.nx + 1, g.ny, 0.0), v(g.nx, g.ny + 1, 0.0) {}

    /// Pins the wall-normal entries to zero (impermeable no-slip walls for a
    /// velocity; vanishing boundary force for a face-sampled force density).
    void zero_boundary_faces() {
        for (int j = 0; j < grid.ny; ++j) {
            u(0, j) = 0.0;
            u(grid.nx, j) = 0.0;
        }
        for (int i = 0; i < grid.nx; ++i) {
            v(i, 0) = 0.0;
            v(i, grid.ny) = 0.0;
        }
    }

    void fill(double a) {
        u.fill(a);
        v.fill(a);
    }
};

/// A MacField used as a velocity: no-slip walls, boundary faces always zero.
using MacVelocity = MacField;
/// A MacField used as a body-force density sampled on faces.
using ForceField = MacField;

/// Full simulator state. Pressure is the projection multiplier of the last
/// step (zero mean); it doubles as the warm start of the next Poisson solve.
struct State {
    Grid grid;
    MacVelocity vel;
    CellField pressure;
    CellField phi;
    CellField theta;
    double t = 0.0;

    State() = default;
    explicit State(const Grid& g)
        : grid(g),
          vel(g),
          pressure(g, DirichletBC{0.0}),
          phi(g, DirichletBC{-1.0}),
          theta(g, DirichletBC{0.0}) {}
};

} // namespace marangoni
