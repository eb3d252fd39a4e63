#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sbd/oracle.hpp"
#include "sbd/points.hpp"
#include "sbd/sheriff.hpp"

namespace sbd {

// Joint resolution of the empty-start and augmented-start processes on
// shared pair randomness. Each point ends with two death times:
//   empty_death     e  — its fate when the run starts empty,
//   augmented_death e' — its fate when the initial points are added.
// A point is a zombie while e <= t < e' (alive only with augmentation) and
// an antizombie while e' <= t < e; both states are "special". Every special
// point descends from exactly one initial point, its ancestor.

enum class Mark : uint8_t { Regular, Zombie, Antizombie };

std::string to_string(Mark m);

struct CoupledRecord {
    PointId id;
    Vec x{0.0, 0.0, 0.0};
    double birth = 0.0;
    double empty_death = kNoDeath;     // never set for initial points
    double augmented_death = kNoDeath;
    bool initial = false;
    std::optional<PointId> ancestor;

    [[nodiscard]] bool alive_empty(double t) const {
        return !initial && birth <= t && t < empty_death;
    }
    [[nodiscard]] bool alive_augmented(double t) const { return birth <= t && t < augmented_death; }
    // Mark while alive in at least one process; nullopt once dead in both.
    [[nodiscard]] std::optional<Mark> mark_at(double t) const {
        const bool e = alive_empty(t), a = alive_augmented(t);
        if (e && a) return Mark::Regular;
        if (a) return Mark::Zombie;
        if (e) return Mark::Antizombie;
        return std::nullopt;
    }
    [[nodiscard]] bool special_at(double t) const {
        const auto m = mark_at(t);
        return m && *m != Mark::Regular;
    }
};

struct Episode {
    PointId point;
    Mark kind; // Zombie or Antizombie
    double start = 0.0;
    double end = kNoDeath; // still special at the horizon when infinite
    PointId ancestor;
};

// One realized duel, kept for the audit trail and the deaths ledger.
struct DuelEvent {
    double time;
    PointId first, second;
    Mark first_mark, second_mark; // marks just before the duel
    bool realized;                // false for the zombie/antizombie no-op case
};

struct CoupledOutcome {
    std::vector<CoupledRecord> points;
    std::vector<Episode> episodes;
    std::vector<DuelEvent> events;
    double t0 = 0.0;
    double t1 = 0.0;
    uint64_t investigation_steps = 0;
    std::size_t max_stack_depth = 0;
    std::size_t card_count = 0;

    [[nodiscard]] std::size_t specials_at(double t) const;
};

CoupledOutcome resolve_coupled(const PointList& initial, const PointList& rain,
                               const DuelSource& source, const Window& window, double t0, double t1,
                               const ResolveOptions& options = {});

// Exhaustive post-run audit: episode log versus the death-time data, family
// disjointness, single-episode property, and the rule that zombies and
// antizombies never realize a duel. Empty result means consistent.
std::vector<std::string> audit_azconds(const CoupledOutcome& outcome);

struct ConsistencyReport {
    std::size_t compared = 0;
    std::vector<std::string> mismatches;
    [[nodiscard]] bool ok() const { return mismatches.empty(); }
};

// Reruns the two plain resolutions on the same randomness and checks that
// the coupled run reproduces both death maps exactly.
ConsistencyReport consistency_check(const CoupledOutcome& coupled, const PointList& initial,
                                    const PointList& rain, const DuelSource& source,
                                    const Window& window, double t0, double t1);

struct FamilyStat {
    PointId ancestor;
    std::size_t size = 0;          // offspring including the ancestor
    double extinction_time = kNoDeath; // last instant any member is special
    std::size_t zombie_episodes = 0;
    std::size_t antizombie_episodes = 0;
};

std::vector<FamilyStat> family_stats(const CoupledOutcome& outcome);

} // namespace sbd
