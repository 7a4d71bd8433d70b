#pragma once

#include <utility>

#include "marangoni/fields.hpp"

namespace marangoni {

/// Outcome of one conjugate-gradient solve. `residual` is the relative l2
/// residual at exit (absolute when the right-hand side is zero).
struct PoissonSolveReport {
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

/// Default iteration cap used when max_iter <= 0 is passed to the solvers.
int default_cg_cap(const Grid& grid);

/// (alpha*I - beta*lap) f evaluated with f's own Dirichlet ghosts.
/// alpha >= 0, beta >= 0, not both zero, gives an SPD operator on the
/// homogeneous part; used directly by tests and by the solvers below.
CellField apply_helmholtz_cc(double alpha, double beta, const CellField& f);

/// Solves (alpha*I - beta*lap) x = rhs for a cell field with constant
/// Dirichlet boundary bc. The boundary term is absorbed into the right-hand
/// side so CG runs on the symmetric positive definite homogeneous operator.
/// Convergence: relative l2 residual <= tol.
std::pair<CellField, PoissonSolveReport> solve_helmholtz_cc(
    double alpha, double beta, const Array2D& rhs, DirichletBC bc,
    const Grid& grid, double tol, int max_iter = 0,
    const Array2D* initial_guess = nullptr);

/// Which staggered velocity component a face solve acts on.
enum class FaceSet { XFaces, YFaces };

/// Solves (I - beta*lap) x = rhs for one no-slip velocity component.
/// Wall-normal entries are pinned to zero; tangential wall ghosts are
/// reflections (ghost = -interior). rhs boundary entries are ignored.
std::pair<Array2D, PoissonSolveReport> solve_helmholtz_face(
    FaceSet which, double beta, const Array2D& rhs, const Grid& grid,
    double tol, int max_iter = 0);

/// Solves lap x = rhs with homogeneous Neumann walls; CG runs on the negated
/// (SPD) system restricted to the mean-free complement. The rhs mean is
/// subtracted first and the solution is returned with zero mean.
/// Convergence requires the relative l2 residual
/// <= tol and, when linf_scale > 0, additionally linf(residual)*linf_scale
/// <= 5*tol; the latter pins the post-projection divergence bound.
std::pair<CellField, PoissonSolveReport> solve_poisson_neumann(
    const Array2D& rhs, const Grid& grid, double tol, double linf_scale = 0.0,
    int max_iter = 0, const Array2D* initial_guess = nullptr);

} // namespace marangoni
