#include "marangoni/operators.hpp"

#include <stdexcept>

namespace marangoni {

MacField gradient_cc(const CellField& f) {
    const Grid& g = f.grid;
    const double idx = 1.0 / g.dx();
    const double idy = 1.0 / g.dy();
    MacField grad(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i)
            grad.u(i, j) = (f.ghosted(i, j) - f.ghosted(i - 1, j)) * idx;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            grad.v(i, j) = (f.ghosted(i, j) - f.ghosted(i, j - 1)) * idy;
    return grad;
}

CellField divergence_mac(const MacField& w) {
    const Grid& g = w.grid;
    const double idx = 1.0 / g.dx();
    const double idy = 1.0 / g.dy();
    CellField div(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            div(i, j) = (w.u(i + 1, j) - w.u(i, j)) * idx + (w.v(i, j + 1) - w.v(i, j)) * idy;
    return div;
}

CellField laplacian_cc(const CellField& f) {
    const Grid& g = f.grid;
    const double idx2 = 1.0 / (g.dx() * g.dx());
    const double idy2 = 1.0 / (g.dy() * g.dy());
    CellField lap(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            lap(i, j) = (f.ghosted(i - 1, j) - 2.0 * f.values(i, j) + f.ghosted(i + 1, j)) * idx2 +
                        (f.ghosted(i, j - 1) - 2.0 * f.values(i, j) + f.ghosted(i, j + 1)) * idy2;
    return lap;
}

CellField advect_upwind(const MacField& w, const CellField& f) {
    if (!(w.grid == f.grid)) throw std::invalid_argument("advect_upwind: grid mismatch");
    const Grid& g = f.grid;
    const double idx = 1.0 / g.dx();
    const double idy = 1.0 / g.dy();
    CellField adv(g);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double uc = 0.5 * (w.u(i, j) + w.u(i + 1, j));
            const double vc = 0.5 * (w.v(i, j) + w.v(i, j + 1));
            const double fij = f.values(i, j);
            const double dfdx = uc > 0.0 ? (fij - f.ghosted(i - 1, j)) * idx
                                         : (f.ghosted(i + 1, j) - fij) * idx;
            const double dfdy = vc > 0.0 ? (fij - f.ghosted(i, j - 1)) * idy
                                         : (f.ghosted(i, j + 1) - fij) * idy;
            adv(i, j) = uc * dfdx + vc * dfdy;
        }
    }
    return adv;
}

Array2D curl_at_corners(const MacField& f) {
    const Grid& g = f.grid;
    const double idx = 1.0 / g.dx();
    const double idy = 1.0 / g.dy();
    Array2D curl(g.nx + 1, g.ny + 1, 0.0);
    for (int j = 1; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i)
            curl(i, j) = (f.v(i, j) - f.v(i - 1, j)) * idx - (f.u(i, j) - f.u(i, j - 1)) * idy;
    return curl;
}

MacVelocity velocity_from_stream(const Array2D& psi, const Grid& grid) {
    if (psi.nx() != grid.nx + 1 || psi.ny() != grid.ny + 1)
        throw std::invalid_argument("velocity_from_stream: psi must be sampled at grid nodes");
    const double idx = 1.0 / grid.dx();
    const double idy = 1.0 / grid.dy();
    MacVelocity vel(grid);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i <= grid.nx; ++i)
            vel.u(i, j) = (psi(i, j + 1) - psi(i, j)) * idy;
    for (int j = 0; j <= grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            vel.v(i, j) = -(psi(i + 1, j) - psi(i, j)) * idx;
    return vel;
}

} // namespace marangoni
