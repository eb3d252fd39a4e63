#include "sbd/jump.hpp"

#include <algorithm>
#include <cmath>

#include "sbd/errors.hpp"
#include "sbd/rng.hpp"

namespace sbd {

namespace {

// Sequential deterministic stream for the jump engine. Deliberately a
// different stream tag from the pair oracle so the reference stays
// independent of the pathwise construction.
class EventStream {
public:
    explicit EventStream(uint64_t seed) : key_(rng::Key(seed).with(rng::Tag::JumpEngine)) {}
    double uniform() { return key_.uniform01(counter_++); }
    double exponential(double rate) {
        if (rate <= 0.0) return std::numeric_limits<double>::infinity();
        return -std::log(uniform()) / rate;
    }

private:
    rng::Key key_;
    uint64_t counter_ = 0;
};

} // namespace

JumpResult jump_run(const Window& window, const ResponseFunction& rf, double lambda,
                    const PointList& initial, double t1, uint64_t seed,
                    std::span<const double> snapshot_times, const JumpOptions& options,
                    std::vector<JumpEvent>* events) {
    if (lambda < 0.0) throw ConfigError("lambda must be non-negative");
    if (rf.dim() != window.dim) throw ConfigError("kernel and window dimensions differ");

    JumpResult result;
    result.snapshot_times.assign(snapshot_times.begin(), snapshot_times.end());
    std::sort(result.snapshot_times.begin(), result.snapshot_times.end());
    result.snapshots.resize(result.snapshot_times.size());

    EventStream stream(seed);
    std::vector<Vec> alive;
    std::vector<double> pressure; // pi(x) for each alive point
    alive.reserve(initial.size() + 64);
    for (const auto& p : initial) alive.push_back(p.x);

    auto recompute = [&]() {
        pressure.assign(alive.size(), 0.0);
        for (std::size_t i = 0; i < alive.size(); ++i)
            for (std::size_t j = i + 1; j < alive.size(); ++j) {
                const double f = rf.eval(window.distance(alive[i], alive[j]));
                pressure[i] += f;
                pressure[j] += f;
            }
    };
    recompute();

    const double birth_rate = lambda * window.volume();
    double t = 0.0;
    std::size_t next_snapshot = 0;
    std::size_t since_recompute = 0;

    auto total_rate = [&]() {
        double s = 0.0;
        for (double v : pressure) s += v;
        return s;
    };
    double death_rate = total_rate();

    // Snapshots are right-continuous: a grid time equal to an event time sees
    // the post-event state, matching the alive_at convention.
    auto flush_snapshots = [&](double strictly_before) {
        while (next_snapshot < result.snapshot_times.size() &&
               result.snapshot_times[next_snapshot] < strictly_before) {
            result.snapshots[next_snapshot] = alive;
            ++next_snapshot;
        }
    };

    while (t < t1) {
        const double rate = birth_rate + death_rate;
        if (rate <= 0.0) break;
        const double wait = stream.exponential(rate);
        const double t_next = t + wait;
        if (t_next >= t1) {
            t = t1;
            break;
        }
        flush_snapshots(t_next);
        t = t_next;

        const bool is_birth = stream.uniform() * rate < birth_rate;
        if (is_birth) {
            Vec x{0.0, 0.0, 0.0};
            for (int c = 0; c < window.dim; ++c) x[c] = window.side * stream.uniform();
            double pi_new = 0.0;
            for (std::size_t i = 0; i < alive.size(); ++i) {
                const double f = rf.eval(window.distance(alive[i], x));
                pressure[i] += f;
                pi_new += f;
            }
            alive.push_back(x);
            pressure.push_back(pi_new);
            death_rate += 2.0 * pi_new;
            ++result.births;
            if (events && options.record_events) events->push_back({t, true, x});
        } else {
            // victim proportional to its pressure
            const double u = stream.uniform() * death_rate;
            double acc = 0.0;
            std::size_t victim = alive.size() - 1;
            for (std::size_t i = 0; i < alive.size(); ++i) {
                acc += pressure[i];
                if (u < acc) {
                    victim = i;
                    break;
                }
            }
            const Vec x = alive[victim];
            const double pi_victim = pressure[victim];
            alive[victim] = alive.back();
            alive.pop_back();
            pressure[victim] = pressure.back();
            pressure.pop_back();
            for (std::size_t i = 0; i < alive.size(); ++i)
                pressure[i] -= rf.eval(window.distance(alive[i], x));
            death_rate -= 2.0 * pi_victim;
            ++result.deaths;
            if (events && options.record_events) events->push_back({t, false, x});
        }

        if (++since_recompute >= options.recompute_every) {
            since_recompute = 0;
            const double incremental = death_rate;
            recompute();
            death_rate = total_rate();
            const double scale = std::max({1.0, incremental, death_rate});
            const double drift = std::abs(incremental - death_rate) / scale;
            result.max_rate_drift = std::max(result.max_rate_drift, drift);
            if (drift > options.drift_tolerance)
                throw RateDriftError("incremental death rate drifted from recomputed total");
        } else {
            // cheap guard against negative drift after many removals
            if (death_rate < 0.0) {
                recompute();
                death_rate = total_rate();
            }
        }
    }
    flush_snapshots(std::nextafter(t1, std::numeric_limits<double>::infinity()));
    result.final_time = t1;
    return result;
}

} // namespace sbd
