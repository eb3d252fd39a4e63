#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sbd/points.hpp"
#include "sbd/response.hpp"

namespace sbd {

// Next-event simulation of the same dynamics as the card-stack engine, used
// as an independent distributional reference: births arrive at rate
// lambda * |W|, each living point dies at the shot-noise rate exerted by the
// rest of the configuration, and the victim is drawn proportionally to its
// pressure. Rates are maintained incrementally with periodic full
// recomputation; the two engines agree in distribution, never pathwise.

struct JumpEvent {
    double time;
    bool birth; // otherwise a death
    Vec x{0.0, 0.0, 0.0};
};

struct JumpResult {
    std::vector<double> snapshot_times;
    std::vector<std::vector<Vec>> snapshots; // alive positions at each grid time
    std::size_t births = 0;
    std::size_t deaths = 0;
    double final_time = 0.0;
    double max_rate_drift = 0.0; // worst relative gap seen at recomputation
};

struct JumpOptions {
    std::size_t recompute_every = 10000; // full rate rebuild cadence
    double drift_tolerance = 1e-6;
    bool record_events = false;
};

JumpResult jump_run(const Window& window, const ResponseFunction& rf, double lambda,
                    const PointList& initial, double t1, uint64_t seed,
                    std::span<const double> snapshot_times, const JumpOptions& options = {},
                    std::vector<JumpEvent>* events = nullptr);

} // namespace sbd
