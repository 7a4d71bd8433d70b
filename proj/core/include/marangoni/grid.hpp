#pragma once

#include <cassert>
#include <stdexcept>

namespace marangoni {

/// Uniform staggered (MAC) grid on the rectangle [0, lx] x [0, ly].
///
/// Scalars live at cell centers ((i+1/2)dx, (j+1/2)dy), i < nx, j < ny.
/// The x velocity component lives on vertical faces ((nx+1) x ny points),
/// the y component on horizontal faces (nx x (ny+1) points).
struct Grid {
    int nx = 0;
    int ny = 0;
    double lx = 1.0;
    double ly = 1.0;

    Grid() = default;
    Grid(int nx_, int ny_, double lx_, double ly_) : nx(nx_), ny(ny_), lx(lx_), ly(ly_) {
        if (nx < 2 || ny < 2) throw std::invalid_argument("Grid: need at least 2 cells per direction");
        if (lx <= 0.0 || ly <= 0.0) throw std::invalid_argument("Grid: domain extents must be positive");
    }

    double dx() const { return lx / nx; }
    double dy() const { return ly / ny; }
    double cell_area() const { return dx() * dy(); }

    double x_center(int i) const { return (i + 0.5) * dx(); }
    double y_center(int j) const { return (j + 0.5) * dy(); }
    double x_face(int i) const { return i * dx(); }
    double y_face(int j) const { return j * dy(); }

    bool operator==(const Grid& other) const {
        return nx == other.nx && ny == other.ny && lx == other.lx && ly == other.ly;
    }
};

} // namespace marangoni
