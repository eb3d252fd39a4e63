#pragma once

#include <cstdint>

#include "sbd/points.hpp"

namespace sbd {

// Homogeneous Poisson rain on window x (t0, t1], intensity lambda, sorted by
// birth time, ids Rain/start_index.. assigned in birth order.
//
// Points are generated per unit time slab from counter-based streams, so the
// rain over (t0, t1] followed by the rain over (t1, t2] reproduces the rain
// over (t0, t2] point for point (pass start_index = first call's count).
// That decomposition is what makes horizon extension exact.
PointList sample_rain(const Window& window, double lambda, double t0, double t1, uint64_t seed,
                      uint32_t start_index = 0, double expected_cap = 1e8);

// Poisson(beta * volume) points born at t0 in the augmentation namespace.
PointList sample_poisson_initial(const Window& window, double beta, double t0, uint64_t seed,
                                 double expected_cap = 1e8);

} // namespace sbd
