#pragma once

#include <cstdint>
#include <random>

#include "marangoni/fields.hpp"

namespace marangoni {

/// Deterministic uniform doubles from a fixed-width engine. The bit-to-double
/// mapping is spelled out here so streams are reproducible across platforms.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform in [-1, 1).
    double symmetric() { return 2.0 * uniform01() - 1.0; }

private:
    std::mt19937_64 eng_;
};

/// Smooth random scalar: a low-mode sine series
///   sum_{m,n=1..modes} c_mn/(m^2+n^2) sin(m pi x/lx) sin(n pi y/ly)
/// sampled at cell centers and normalized to max|.| = 1 (zero field when all
/// coefficients vanish). Vanishes on the walls by construction.
Array2D smooth_random_cells(const Grid& grid, std::uint64_t seed, int modes);

/// Same series sampled at grid nodes; used as a random stream function.
Array2D smooth_random_nodes(const Grid& grid, std::uint64_t seed, int modes);

/// Discretely divergence-free random velocity with zero wall-normal faces,
/// scaled to max face amplitude `amplitude`.
MacVelocity random_solenoidal_velocity(const Grid& grid, std::uint64_t seed, int modes,
                                       double amplitude);

} // namespace marangoni
