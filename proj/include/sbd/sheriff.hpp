#pragma once

#include <cstdint>
#include <vector>

#include "sbd/oracle.hpp"
#include "sbd/points.hpp"

namespace sbd {

// Pathwise resolution of the duel process on a finite horizon. Each point
// carries a stack of its pending duel cards sorted earliest-on-top; an
// investigation stack chases the recursive "is the killer still alive"
// question until a duel resolves. The outcome solves
//   d_p = inf{ T_pq : d_q >= T_pq, q kills p }
// exactly, independently of the enumeration order of the points.

enum class Variant {
    SingleCard, // directions drawn up front; stacks hold death sentences
    DoubleCard, // both duelists hold the card; direction drawn at realization
};

struct Ordering {
    enum class Mode { Canonical, Shuffled };
    Mode mode = Mode::Canonical;
    uint64_t shuffle_seed = 0;

    static Ordering canonical() { return {}; }
    static Ordering shuffled(uint64_t seed) { return {Mode::Shuffled, seed}; }
};

struct ResolveOptions {
    Variant variant = Variant::DoubleCard;
    Ordering ordering{};
    // Investigation step cap = budget_factor * card count; a hang on a
    // pathological kernel/intensity combination becomes a diagnosable error.
    uint64_t budget_factor = 1000;
};

struct ResolutionOutcome {
    PointList points;    // input records with death time and killer filled in
    double t0 = 0.0;
    double t1 = 0.0;
    std::vector<uint32_t> alive_at_horizon; // indices into points
    uint64_t investigation_steps = 0;
    std::size_t max_stack_depth = 0;
    std::size_t card_count = 0;
};

ResolutionOutcome resolve(PointList points, const DuelSource& source, const Window& window,
                          double t0, double t1, const ResolveOptions& options = {});

// Union of an initial configuration (born at t0, augmentation namespace) and
// the rain; identical contract to resolve on the union.
ResolutionOutcome resolve_with_initial(const PointList& initial, const PointList& rain,
                                       const DuelSource& source, const Window& window, double t0,
                                       double t1, const ResolveOptions& options = {});

// Continues a finished outcome to a later horizon with additional rain born
// in (prev.t1, t2]. Because the duel source is pure, the result is identical
// to a single resolve over the whole interval.
ResolutionOutcome extend(const ResolutionOutcome& prev, const PointList& new_rain,
                         const DuelSource& source, const Window& window, double t2,
                         const ResolveOptions& options = {});

// Points alive at time t: birth <= t < death.
std::vector<PointId> snapshot_ids(const ResolutionOutcome& outcome, double t);
std::vector<Vec> snapshot_positions(const ResolutionOutcome& outcome, double t);

} // namespace sbd
