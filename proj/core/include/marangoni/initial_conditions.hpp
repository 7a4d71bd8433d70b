#pragma once

#include "marangoni/config.hpp"
#include "marangoni/fields.hpp"

namespace marangoni {

/// Builds the initial state selected by cfg.ic (with the isothermal override
/// zeroing the temperature). Velocity presets are discretely divergence free.
State initial_state(const RunConfig& cfg);

} // namespace marangoni
