#pragma once

#include <array>
#include <cstdint>

#include "musklab/chain.hpp"
#include "musklab/grid.hpp"
#include "musklab/modulus.hpp"

namespace musk {

// eps * sin(2 pi k.x / P)
InterfaceField make_mode_field(const PeriodicGrid& grid, std::array<int, 2> k, double eps);

// Band-limited random Fourier series (modes up to kmax), rescaled so the
// centered-difference Lipschitz norm equals target_slope, then shifted into
// [0, 1]. If the oscillation exceeds 1 after slope normalization the whole
// field is shrunk to fit and the slope lands below target.
InterfaceField make_random_lipschitz(const PeriodicGrid& grid, std::uint64_t seed,
                                     double target_slope, int kmax);

// Touching-pair fixture sampled onto the grid. scale > 1 turns it into a
// modulus violation (min deficit < 0 at t = 0) for monitor fault injection.
CrossingProfile::GridFixture make_fixture_crossing(const PeriodicGrid& grid, const Modulus& m,
                                                   double xi, double scale);

}  // namespace musk
