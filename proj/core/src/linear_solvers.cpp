#include "marangoni/linear_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace marangoni {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) s += a[n] * b[n];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

double linf(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t n = 0; n < y.size(); ++n) y[n] += alpha * x[n];
}

struct CgOptions {
    double tol = 1e-10;
    int max_iter = 0;
    double linf_scale = 0.0; // extra stop condition when > 0
};

/// Plain conjugate gradients on an SPD operator given as y = A(x).
/// Deterministic: fixed loop order, no reductions reordered.
///
/// The iteration runs on the rescaled system A (x / s) = b / s with
/// s = |b|_inf. CG is scale-invariant in exact arithmetic, but dot(r, r)
/// underflows once residual entries drop below sqrt(DBL_MIN); a long
/// exponential decay reaches that scale and stalls the unscaled iteration
/// just above tolerance. A warm start that already meets the tolerance
/// leaves x bitwise untouched (no rescaling round trip).
PoissonSolveReport conjugate_gradient(
    const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply,
    const std::vector<double>& b, std::vector<double>& x, const CgOptions& opt) {
    PoissonSolveReport report;
    const std::size_t n = b.size();
    const double bscale = linf(b);
    if (bscale == 0.0) {
        x.assign(n, 0.0);
        report.converged = true;
        return report;
    }
    const double inv_scale = 1.0 / bscale;
    std::vector<double> bs(n), xs(n), r(n), p(n), ap(n);
    for (std::size_t m = 0; m < n; ++m) bs[m] = b[m] * inv_scale;
    for (std::size_t m = 0; m < n; ++m) xs[m] = x[m] * inv_scale;
    const double bnorm = norm2(bs);

    apply(xs, ap);
    for (std::size_t m = 0; m < n; ++m) r[m] = bs[m] - ap[m];

    auto done = [&](double rnorm) {
        if (rnorm > opt.tol * bnorm) return false;
        if (opt.linf_scale > 0.0 && linf(r) * bscale * opt.linf_scale > 5.0 * opt.tol)
            return false;
        return true;
    };

    double rr = dot(r, r);
    double rnorm = std::sqrt(rr);
    if (!done(rnorm)) {
        p = r;
        for (int it = 1; it <= opt.max_iter; ++it) {
            apply(p, ap);
            const double pap = dot(p, ap);
            if (pap <= 0.0) break; // loss of positive definiteness (roundoff)
            const double alpha = rr / pap;
            axpy(alpha, p, xs);
            axpy(-alpha, ap, r);
            const double rr_new = dot(r, r);
            rnorm = std::sqrt(rr_new);
            report.iterations = it;
            if (done(rnorm)) {
                report.converged = true;
                break;
            }
            const double beta = rr_new / rr;
            for (std::size_t m = 0; m < n; ++m) p[m] = r[m] + beta * p[m];
            rr = rr_new;
        }
        for (std::size_t m = 0; m < n; ++m) x[m] = xs[m] * bscale;
    } else {
        report.converged = true;
    }
    report.residual = rnorm / bnorm;
    return report;
}

} // namespace

int default_cg_cap(const Grid& grid) { return 10 * std::max(grid.nx, grid.ny); }

CellField apply_helmholtz_cc(double alpha, double beta, const CellField& f) {
    const Grid& g = f.grid;
    const double idx2 = 1.0 / (g.dx() * g.dx());
    const double idy2 = 1.0 / (g.dy() * g.dy());
    CellField out(g, f.bc);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double lap =
                (f.ghosted(i - 1, j) - 2.0 * f.values(i, j) + f.ghosted(i + 1, j)) * idx2 +
                (f.ghosted(i, j - 1) - 2.0 * f.values(i, j) + f.ghosted(i, j + 1)) * idy2;
            out(i, j) = alpha * f.values(i, j) - beta * lap;
        }
    return out;
}

std::pair<CellField, PoissonSolveReport> solve_helmholtz_cc(
    double alpha, double beta, const Array2D& rhs, DirichletBC bc,
    const Grid& grid, double tol, int max_iter, const Array2D* initial_guess) {
    if (rhs.nx() != grid.nx || rhs.ny() != grid.ny)
        throw std::invalid_argument("solve_helmholtz_cc: rhs shape mismatch");
    const int nx = grid.nx, ny = grid.ny;
    const double idx2 = 1.0 / (grid.dx() * grid.dx());
    const double idy2 = 1.0 / (grid.dy() * grid.dy());

    // Homogenized operator: ghost = -interior, so walls add idx2 (not -idx2)
    // to the diagonal; the inhomogeneous 2*bc part moves into b below.
    auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const std::size_t n = static_cast<std::size_t>(j) * nx + i;
                const double c = x[n];
                const double xl = i > 0 ? x[n - 1] : -c;
                const double xr = i < nx - 1 ? x[n + 1] : -c;
                const double xd = j > 0 ? x[n - nx] : -c;
                const double xu = j < ny - 1 ? x[n + nx] : -c;
                const double lap = (xl - 2.0 * c + xr) * idx2 + (xd - 2.0 * c + xu) * idy2;
                y[n] = alpha * c - beta * lap;
            }
    };

    std::vector<double> b(rhs.raw());
    for (int j = 0; j < ny; ++j) {
        b[static_cast<std::size_t>(j) * nx] += beta * 2.0 * bc.value * idx2;
        b[static_cast<std::size_t>(j) * nx + (nx - 1)] += beta * 2.0 * bc.value * idx2;
    }
    for (int i = 0; i < nx; ++i) {
        b[static_cast<std::size_t>(i)] += beta * 2.0 * bc.value * idy2;
        b[static_cast<std::size_t>(ny - 1) * nx + i] += beta * 2.0 * bc.value * idy2;
    }

    std::vector<double> x(static_cast<std::size_t>(nx) * ny, 0.0);
    if (initial_guess) {
        if (initial_guess->nx() != nx || initial_guess->ny() != ny)
            throw std::invalid_argument("solve_helmholtz_cc: initial guess shape mismatch");
        x = initial_guess->raw();
    }

    CgOptions opt;
    opt.tol = tol;
    opt.max_iter = max_iter > 0 ? max_iter : default_cg_cap(grid);
    PoissonSolveReport report = conjugate_gradient(apply, b, x, opt);

    CellField out(grid, bc);
    out.values.raw() = std::move(x);
    return {std::move(out), report};
}

std::pair<Array2D, PoissonSolveReport> solve_helmholtz_face(
    FaceSet which, double beta, const Array2D& rhs, const Grid& grid,
    double tol, int max_iter) {
    const int nx = grid.nx, ny = grid.ny;
    const bool xf = which == FaceSet::XFaces;
    const int mx = xf ? nx + 1 : nx; // array extents
    const int my = xf ? ny : ny + 1;
    if (rhs.nx() != mx || rhs.ny() != my)
        throw std::invalid_argument("solve_helmholtz_face: rhs shape mismatch");
    const double idx2 = 1.0 / (grid.dx() * grid.dx());
    const double idy2 = 1.0 / (grid.dy() * grid.dy());

    // Interior unknowns only; wall-normal faces stay zero. In the normal
    // direction neighbors are plain (pinned) values; in the tangential
    // direction the wall ghost is the no-slip reflection -interior.
    const int ix0 = xf ? 1 : 0, ix1 = xf ? nx - 1 : nx - 1;
    const int jy0 = xf ? 0 : 1, jy1 = xf ? ny - 1 : ny - 1;
    const int unx = ix1 - ix0 + 1;
    const int uny = jy1 - jy0 + 1;
    const std::size_t nunk = static_cast<std::size_t>(unx) * uny;

    auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
        for (int jj = 0; jj < uny; ++jj)
            for (int ii = 0; ii < unx; ++ii) {
                const std::size_t n = static_cast<std::size_t>(jj) * unx + ii;
                const double c = x[n];
                double xl, xr, xd, xu;
                if (xf) {
                    xl = ii > 0 ? x[n - 1] : 0.0; // pinned wall face
                    xr = ii < unx - 1 ? x[n + 1] : 0.0;
                    xd = jj > 0 ? x[n - unx] : -c; // reflected ghost
                    xu = jj < uny - 1 ? x[n + unx] : -c;
                } else {
                    xl = ii > 0 ? x[n - 1] : -c;
                    xr = ii < unx - 1 ? x[n + 1] : -c;
                    xd = jj > 0 ? x[n - unx] : 0.0;
                    xu = jj < uny - 1 ? x[n + unx] : 0.0;
                }
                const double lap = (xl - 2.0 * c + xr) * idx2 + (xd - 2.0 * c + xu) * idy2;
                y[n] = c - beta * lap;
            }
    };

    std::vector<double> b(nunk);
    for (int jj = 0; jj < uny; ++jj)
        for (int ii = 0; ii < unx; ++ii)
            b[static_cast<std::size_t>(jj) * unx + ii] = rhs(ix0 + ii, jy0 + jj);

    std::vector<double> x(nunk, 0.0);
    CgOptions opt;
    opt.tol = tol;
    opt.max_iter = max_iter > 0 ? max_iter : default_cg_cap(grid);
    PoissonSolveReport report = conjugate_gradient(apply, b, x, opt);

    Array2D out(mx, my, 0.0);
    for (int jj = 0; jj < uny; ++jj)
        for (int ii = 0; ii < unx; ++ii)
            out(ix0 + ii, jy0 + jj) = x[static_cast<std::size_t>(jj) * unx + ii];
    return {std::move(out), report};
}

std::pair<CellField, PoissonSolveReport> solve_poisson_neumann(
    const Array2D& rhs, const Grid& grid, double tol, double linf_scale,
    int max_iter, const Array2D* initial_guess) {
    const int nx = grid.nx, ny = grid.ny;
    if (rhs.nx() != nx || rhs.ny() != ny)
        throw std::invalid_argument("solve_poisson_neumann: rhs shape mismatch");
    const double idx2 = 1.0 / (grid.dx() * grid.dx());
    const double idy2 = 1.0 / (grid.dy() * grid.dy());
    const std::size_t ncell = static_cast<std::size_t>(nx) * ny;

    // -lap with zero-flux ghosts (ghost = interior): missing neighbors drop
    // out of the stencil. Constants are in the nullspace; CG is run on the
    // mean-free complement, which the operator preserves.
    auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const std::size_t n = static_cast<std::size_t>(j) * nx + i;
                const double c = x[n];
                const double xl = i > 0 ? x[n - 1] : c;
                const double xr = i < nx - 1 ? x[n + 1] : c;
                const double xd = j > 0 ? x[n - nx] : c;
                const double xu = j < ny - 1 ? x[n + nx] : c;
                y[n] = -((xl - 2.0 * c + xr) * idx2 + (xd - 2.0 * c + xu) * idy2);
            }
    };

    auto subtract_mean = [ncell](std::vector<double>& v) {
        double m = 0.0;
        for (double a : v) m += a;
        m /= static_cast<double>(ncell);
        for (double& a : v) a -= m;
    };

    std::vector<double> b(rhs.raw());
    for (double& v : b) v = -v; // lap x = rhs becomes SPD (-lap) x = -rhs
    subtract_mean(b);

    std::vector<double> x(ncell, 0.0);
    if (initial_guess) {
        if (initial_guess->nx() != nx || initial_guess->ny() != ny)
            throw std::invalid_argument("solve_poisson_neumann: initial guess shape mismatch");
        x = initial_guess->raw();
        subtract_mean(x);
    }

    CgOptions opt;
    opt.tol = tol;
    opt.linf_scale = linf_scale;
    opt.max_iter = max_iter > 0 ? max_iter : default_cg_cap(grid);
    PoissonSolveReport report = conjugate_gradient(apply, b, x, opt);

    subtract_mean(x); // roundoff guard; iterates are mean-free by construction
    CellField out(grid, DirichletBC{0.0});
    out.values.raw() = std::move(x);
    return {std::move(out), report};
}

} // namespace marangoni
