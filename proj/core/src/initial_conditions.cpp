#include "marangoni/initial_conditions.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "marangoni/operators.hpp"
#include "marangoni/random_fields.hpp"

namespace marangoni {

namespace {

constexpr double pi = std::numbers::pi;

Array2D sine_series(const Grid& g, std::uint64_t seed, int modes, bool nodes) {
    DetRng rng(seed);
    std::vector<double> coef(static_cast<std::size_t>(modes) * modes);
    for (int n = 1; n <= modes; ++n)
        for (int m = 1; m <= modes; ++m)
            coef[static_cast<std::size_t>(n - 1) * modes + (m - 1)] =
                rng.symmetric() / static_cast<double>(m * m + n * n);

    const int mx = nodes ? g.nx + 1 : g.nx;
    const int my = nodes ? g.ny + 1 : g.ny;
    Array2D out(mx, my, 0.0);
    double maxabs = 0.0;
    for (int j = 0; j < my; ++j) {
        const double y = nodes ? g.y_face(j) : g.y_center(j);
        for (int i = 0; i < mx; ++i) {
            const double x = nodes ? g.x_face(i) : g.x_center(i);
            double s = 0.0;
            for (int n = 1; n <= modes; ++n)
                for (int m = 1; m <= modes; ++m)
                    s += coef[static_cast<std::size_t>(n - 1) * modes + (m - 1)] *
                         std::sin(m * pi * x / g.lx) * std::sin(n * pi * y / g.ly);
            out(i, j) = s;
            maxabs = std::max(maxabs, std::abs(s));
        }
    }
    if (maxabs > 0.0)
        for (double& v : out.raw()) v /= maxabs;
    return out;
}

} // namespace

Array2D smooth_random_cells(const Grid& grid, std::uint64_t seed, int modes) {
    return sine_series(grid, seed, modes, false);
}

Array2D smooth_random_nodes(const Grid& grid, std::uint64_t seed, int modes) {
    return sine_series(grid, seed, modes, true);
}

MacVelocity random_solenoidal_velocity(const Grid& grid, std::uint64_t seed, int modes,
                                       double amplitude) {
    Array2D psi = smooth_random_nodes(grid, seed, modes);
    // Scale the stream function so the induced face velocities peak near the
    // requested amplitude.
    MacVelocity vel = velocity_from_stream(psi, grid);
    double maxabs = 0.0;
    for (double v : vel.u.raw()) maxabs = std::max(maxabs, std::abs(v));
    for (double v : vel.v.raw()) maxabs = std::max(maxabs, std::abs(v));
    if (maxabs > 0.0) {
        const double s = amplitude / maxabs;
        for (double& v : vel.u.raw()) v *= s;
        for (double& v : vel.v.raw()) v *= s;
    }
    vel.zero_boundary_faces();
    return vel;
}

State initial_state(const RunConfig& cfg) {
    const Grid grid(cfg.nx, cfg.ny, cfg.lx, cfg.ly);
    State s(grid);

    // Phase field
    switch (cfg.ic) {
        case InitPreset::Flat:
        case InitPreset::Stratified:
        case InitPreset::EigenmodeTheta:
            s.phi.fill(-1.0);
            break;
        case InitPreset::Bubble: {
            const double w = std::sqrt(2.0) * cfg.eps;
            s.phi.sample([&](double x, double y) {
                const double r = std::hypot(x - cfg.bubble_cx, y - cfg.bubble_cy);
                return std::tanh((cfg.bubble_radius - r) / w);
            });
            break;
        }
        case InitPreset::Random: {
            const Array2D noise = smooth_random_cells(grid, cfg.seed, cfg.random_modes);
            for (int j = 0; j < grid.ny; ++j)
                for (int i = 0; i < grid.nx; ++i)
                    s.phi(i, j) = cfg.phi_amplitude * noise(i, j);
            break;
        }
    }

    // Temperature; amplitude zero (or isothermal mode) leaves it at zero.
    const double th_amp = cfg.mode == RunMode::Isothermal ? 0.0 : cfg.theta_amplitude;
    if (th_amp != 0.0) {
        switch (cfg.ic) {
            case InitPreset::Stratified:
                s.theta.sample([&](double, double y) {
                    return th_amp * std::sin(pi * y / cfg.ly);
                });
                break;
            case InitPreset::Random: {
                const Array2D noise =
                    smooth_random_cells(grid, cfg.seed + 1, cfg.random_modes);
                for (int j = 0; j < grid.ny; ++j)
                    for (int i = 0; i < grid.nx; ++i)
                        s.theta(i, j) = th_amp * noise(i, j);
                break;
            }
            default:
                // flat, bubble, eigenmode-theta: fundamental Dirichlet mode
                s.theta.sample([&](double x, double y) {
                    return th_amp * std::sin(pi * x / cfg.lx) * std::sin(pi * y / cfg.ly);
                });
                break;
        }
    }

    if (cfg.vel_amplitude > 0.0)
        s.vel = random_solenoidal_velocity(grid, cfg.seed + 2, cfg.random_modes,
                                           cfg.vel_amplitude);
    return s;
}

} // namespace marangoni
