#include "marangoni/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace marangoni {

double integral_cc(const CellField& f) {
    double s = 0.0;
    for (double v : f.values.raw()) s += v;
    return s * f.grid.cell_area();
}

double l2_norm(const CellField& f) {
    double s = 0.0;
    for (double v : f.values.raw()) s += v * v;
    return std::sqrt(s * f.grid.cell_area());
}

double linf_norm(const CellField& f) {
    double m = 0.0;
    for (double v : f.values.raw()) m = std::max(m, std::abs(v));
    return m;
}

double inner_cc(const CellField& f, const CellField& g) {
    if (!f.values.same_shape(g.values)) throw std::invalid_argument("inner_cc: shape mismatch");
    double s = 0.0;
    const auto& a = f.values.raw();
    const auto& b = g.values.raw();
    for (std::size_t n = 0; n < a.size(); ++n) s += a[n] * b[n];
    return s * f.grid.cell_area();
}

double inner_faces(const MacField& w1, const MacField& w2) {
    if (!(w1.grid == w2.grid)) throw std::invalid_argument("inner_faces: grid mismatch");
    const Grid& g = w1.grid;
    double s = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            const double w = (i == 0 || i == g.nx) ? 0.5 : 1.0;
            s += w * w1.u(i, j) * w2.u(i, j);
        }
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double w = (j == 0 || j == g.ny) ? 0.5 : 1.0;
            s += w * w1.v(i, j) * w2.v(i, j);
        }
    return s * g.cell_area();
}

double l2_norm(const MacField& w) { return std::sqrt(inner_faces(w, w)); }

double linf_norm(const MacField& w) {
    double m = 0.0;
    for (double v : w.u.raw()) m = std::max(m, std::abs(v));
    for (double v : w.v.raw()) m = std::max(m, std::abs(v));
    return m;
}

ComponentMax component_max(const MacField& w) {
    ComponentMax m;
    for (double v : w.u.raw()) m.u = std::max(m.u, std::abs(v));
    for (double v : w.v.raw()) m.v = std::max(m.v, std::abs(v));
    return m;
}

double h1_seminorm(const CellField& f) {
    // Inlined gradient_cc to avoid the temporary; same stencil and weights.
    const Grid& g = f.grid;
    const double idx = 1.0 / g.dx();
    const double idy = 1.0 / g.dy();
    double s = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            const double gx = (f.ghosted(i, j) - f.ghosted(i - 1, j)) * idx;
            const double w = (i == 0 || i == g.nx) ? 0.5 : 1.0;
            s += w * gx * gx;
        }
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double gy = (f.ghosted(i, j) - f.ghosted(i, j - 1)) * idy;
            const double w = (j == 0 || j == g.ny) ? 0.5 : 1.0;
            s += w * gy * gy;
        }
    return std::sqrt(s * g.cell_area());
}

double velocity_grad_norm_sq(const MacVelocity& w) {
    const Grid& g = w.grid;
    const double idx = 1.0 / g.dx();
    const double idy = 1.0 / g.dy();
    double s = 0.0;
    // du/dx at cell centers; wall faces are genuine degrees of freedom (zero).
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double d = (w.u(i + 1, j) - w.u(i, j)) * idx;
            s += d * d;
        }
    // du/dy at nodes; reflected ghosts give 2u/dy at walls with half weight.
    for (int i = 0; i <= g.nx; ++i) {
        for (int j = 1; j < g.ny; ++j) {
            const double d = (w.u(i, j) - w.u(i, j - 1)) * idy;
            s += d * d;
        }
        const double dlo = 2.0 * w.u(i, 0) * idy;
        const double dhi = 2.0 * w.u(i, g.ny - 1) * idy;
        s += 0.5 * (dlo * dlo + dhi * dhi);
    }
    // dv/dy at cell centers.
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double d = (w.v(i, j + 1) - w.v(i, j)) * idy;
            s += d * d;
        }
    // dv/dx at nodes with reflected wall ghosts.
    for (int j = 0; j <= g.ny; ++j) {
        for (int i = 1; i < g.nx; ++i) {
            const double d = (w.v(i, j) - w.v(i - 1, j)) * idx;
            s += d * d;
        }
        const double dlo = 2.0 * w.v(0, j) * idx;
        const double dhi = 2.0 * w.v(g.nx - 1, j) * idx;
        s += 0.5 * (dlo * dlo + dhi * dhi);
    }
    return s * g.cell_area();
}

double potential_integral(const CellField& phi, const PhysicalParams& p) {
    double s = 0.0;
    for (double v : phi.values.raw()) s += potential_value(v, p);
    return s * phi.grid.cell_area();
}

} // namespace marangoni
