#include "sbd/sheriffz.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

#include "sbd/detail/duel_stacks.hpp"
#include "sbd/errors.hpp"
#include "sbd/grid.hpp"

namespace sbd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using detail::Card;
using detail::Stack;

class CoupledResolver {
public:
    CoupledResolver(const PointList& points, std::size_t n_initial, const DuelSource& source,
                    const Window& window, double t1, const ResolveOptions& options)
        : points_(points), n_initial_(n_initial), source_(source), options_(options), t1_(t1),
          stacks_(points.size()), empty_death_(points.size(), kInf),
          augmented_death_(points.size(), kInf), ancestor_(points.size(), kNone),
          episode_index_(points.size(), kNone) {
        build_stacks(window);
        // initial points start out as zombies, each rooting its own family
        for (uint32_t z = 0; z < n_initial_; ++z) {
            ancestor_[z] = z;
            open_episode(z, Mark::Zombie, points_[z].birth, z);
        }
    }

    void run() {
        const uint64_t budget = options_.budget_factor * std::max<uint64_t>(card_count_, 1) + 1024;
        const auto order = detail::enumeration_order(
            points_, options_.ordering.mode == Ordering::Mode::Shuffled, options_.ordering.shuffle_seed);
        std::size_t cursor = 0;
        std::vector<Card> is;

        while (true) {
            if (is.empty()) {
                while (cursor < order.size() && !eligible(order[cursor])) ++cursor;
                if (cursor == order.size()) break;
                is.push_back(stacks_[order[cursor]].back());
            }
            max_is_depth_ = std::max(max_is_depth_, is.size());
            if (++steps_ > budget) throw InvestigationBudgetError("investigation budget exceeded");

            const Card card = is.back();
            const uint32_t p = card.owner;
            const uint32_t q = card.other;

            if (finished(q)) {
                assert(!stacks_[p].empty() && stacks_[p].back().time == card.time);
                stacks_[p].pop_back();
                is.pop_back();
                continue;
            }
            assert(!stacks_[q].empty());
            const Card q_top = stacks_[q].back();
            if (q_top.time < card.time) {
                is.push_back(q_top);
                continue;
            }
            assert(q_top.other == p && q_top.time == card.time);
            interact(p, q, card.time);
            is.pop_back();
        }
    }

    CoupledOutcome finish(double t0) && {
        CoupledOutcome out;
        out.t0 = t0;
        out.t1 = t1_;
        out.investigation_steps = steps_;
        out.max_stack_depth = max_is_depth_;
        out.card_count = card_count_;
        out.points.reserve(points_.size());
        for (uint32_t i = 0; i < points_.size(); ++i) {
            CoupledRecord r;
            r.id = points_[i].id;
            r.x = points_[i].x;
            r.birth = points_[i].birth;
            r.initial = i < n_initial_;
            r.empty_death = r.initial ? kNoDeath : empty_death_[i];
            r.augmented_death = augmented_death_[i];
            if (ancestor_[i] != kNone) r.ancestor = points_[ancestor_[i]].id;
            out.points.push_back(r);
        }
        out.episodes = std::move(episodes_);
        out.events = std::move(events_);
        return out;
    }

private:
    static constexpr uint32_t kNone = std::numeric_limits<uint32_t>::max();

    [[nodiscard]] bool initial(uint32_t p) const { return p < n_initial_; }

    [[nodiscard]] bool dead_in_both(uint32_t p) const {
        return augmented_death_[p] < kInf && (initial(p) || empty_death_[p] < kInf);
    }

    [[nodiscard]] bool finished(uint32_t p) const { return dead_in_both(p) || stacks_[p].empty(); }

    // finished() also covers exhausted stacks, which step 2 must still skip;
    // eligibility is simply "unfinished with cards left".
    [[nodiscard]] bool eligible(uint32_t p) const { return !dead_in_both(p) && !stacks_[p].empty(); }

    [[nodiscard]] Mark mark(uint32_t p) const {
        const bool dead_empty = initial(p) || empty_death_[p] < kInf;
        const bool dead_aug = augmented_death_[p] < kInf;
        assert(!(dead_empty && dead_aug));
        if (dead_empty) return Mark::Zombie;
        if (dead_aug) return Mark::Antizombie;
        return Mark::Regular;
    }

    void open_episode(uint32_t p, Mark kind, double start, uint32_t anc) {
        assert(episode_index_[p] == kNone);
        episode_index_[p] = static_cast<uint32_t>(episodes_.size());
        episodes_.push_back({points_[p].id, kind, start, kNoDeath, points_[anc].id});
    }

    void close_episode(uint32_t p, double end) {
        assert(episode_index_[p] != kNone);
        episodes_[episode_index_[p]].end = end;
    }

    void pop_top(uint32_t p, double time) {
        assert(!stacks_[p].empty() && stacks_[p].back().time == time);
        (void)time;
        stacks_[p].pop_back();
    }

    // The six-way interaction table. Every realized duel resolves exactly one
    // death (in one or both processes); the zombie-meets-antizombie case is a
    // recorded no-op.
    void interact(uint32_t p, uint32_t q, double time) {
        Mark mp = mark(p);
        Mark mq = mark(q);
        events_.push_back({time, points_[p].id, points_[q].id, mp, mq, true});

        if (mp != Mark::Regular && mq != Mark::Regular && mp != mq) {
            // opposite kinds live in different processes and cannot interact
            events_.back().realized = false;
            pop_top(p, time);
            pop_top(q, time);
            return;
        }
        // normalize so that p is the "more special" side of the table
        if ((mq == Mark::Zombie || mq == Mark::Antizombie) && mp == Mark::Regular) {
            std::swap(p, q);
            std::swap(mp, mq);
        }
        const bool p_dies = source_.kills(points_[p], points_[q]);

        if (mp == Mark::Regular) { // both regular
            const uint32_t loser = p_dies ? p : q;
            const uint32_t winner = p_dies ? q : p;
            empty_death_[loser] = augmented_death_[loser] = time;
            pop_top(winner, time);
            return;
        }
        if (mp == Mark::Zombie && mq == Mark::Regular) {
            if (p_dies) { // the regular point kills the zombie in the augmented process
                augmented_death_[p] = time;
                close_episode(p, time);
                pop_top(q, time);
            } else { // the zombie kills the regular point there; it turns antizombie
                augmented_death_[q] = time;
                ancestor_[q] = ancestor_[p];
                open_episode(q, Mark::Antizombie, time, ancestor_[p]);
                pop_top(p, time);
                pop_top(q, time);
            }
            return;
        }
        if (mp == Mark::Antizombie && mq == Mark::Regular) {
            if (p_dies) { // the regular point kills the antizombie in the empty process
                empty_death_[p] = time;
                close_episode(p, time);
                pop_top(q, time);
            } else { // the antizombie kills the regular point there; it turns zombie
                empty_death_[q] = time;
                ancestor_[q] = ancestor_[p];
                open_episode(q, Mark::Zombie, time, ancestor_[p]);
                pop_top(p, time);
                pop_top(q, time);
            }
            return;
        }
        // same special kind on both sides: the duel happens in their common process
        assert(mp == mq);
        const uint32_t loser = p_dies ? p : q;
        const uint32_t winner = p_dies ? q : p;
        if (mp == Mark::Zombie) {
            augmented_death_[loser] = time;
        } else {
            empty_death_[loser] = time;
        }
        close_episode(loser, time);
        pop_top(winner, time);
    }

    void build_stacks(const Window& window) {
        std::vector<Vec> xs(points_.size());
        for (std::size_t i = 0; i < points_.size(); ++i) xs[i] = points_[i].x;
        NeighborGrid grid(xs, window, source_.interaction_radius());

        std::vector<double> all_times;
        std::vector<uint32_t> nbrs;
        for (uint32_t i = 0; i < points_.size(); ++i) {
            grid.query(points_[i].x, nbrs, i);
            for (uint32_t j : nbrs) {
                if (j <= i) continue;
                const double t = source_.duel_time(points_[i], points_[j]);
                if (!(t < t1_)) continue;
                all_times.push_back(t);
                ++card_count_;
                stacks_[i].push_back({i, j, t});
                stacks_[j].push_back({j, i, t});
            }
        }
        detail::check_distinct_times(all_times);
        for (auto& s : stacks_) detail::sort_stack(s);
    }

    const PointList& points_;
    std::size_t n_initial_;
    const DuelSource& source_;
    const ResolveOptions& options_;
    double t1_;
    std::vector<Stack> stacks_;
    std::vector<double> empty_death_;
    std::vector<double> augmented_death_;
    std::vector<uint32_t> ancestor_;
    std::vector<uint32_t> episode_index_;
    std::vector<Episode> episodes_;
    std::vector<DuelEvent> events_;
    uint64_t steps_ = 0;
    std::size_t max_is_depth_ = 0;
    std::size_t card_count_ = 0;
};

} // namespace

std::string to_string(Mark m) {
    switch (m) {
        case Mark::Regular: return "regular";
        case Mark::Zombie: return "zombie";
        case Mark::Antizombie: return "antizombie";
    }
    return "?";
}

std::size_t CoupledOutcome::specials_at(double t) const {
    std::size_t n = 0;
    for (const auto& p : points) n += p.special_at(t) ? 1 : 0;
    return n;
}

CoupledOutcome resolve_coupled(const PointList& initial, const PointList& rain,
                               const DuelSource& source, const Window& window, double t0, double t1,
                               const ResolveOptions& options) {
    for (const auto& z : initial) {
        if (z.birth != t0) throw ConfigError("initial points must be born at t0");
        if (z.id.ns != IdSpace::Augmentation)
            throw ConfigError("initial points use the augmentation namespace");
    }
    for (const auto& p : rain) {
        if (!(p.birth < t1)) throw ConfigError("all birth times must precede the horizon");
        if (p.id.ns != IdSpace::Rain) throw ConfigError("rain points use the rain namespace");
    }
    PointList all;
    all.reserve(initial.size() + rain.size());
    all.insert(all.end(), initial.begin(), initial.end());
    all.insert(all.end(), rain.begin(), rain.end());

    CoupledResolver r(all, initial.size(), source, window, t1, options);
    r.run();
    return std::move(r).finish(t0);
}

namespace {
std::string id_str(PointId id) {
    std::ostringstream os;
    os << (id.ns == IdSpace::Rain ? "rain:" : "aug:") << id.index;
    return os.str();
}
} // namespace

std::vector<std::string> audit_azconds(const CoupledOutcome& outcome) {
    std::vector<std::string> issues;
    std::map<PointId, const CoupledRecord*> by_id;
    for (const auto& p : outcome.points) by_id[p.id] = &p;

    // episodes must exactly mirror the (e, e') data
    std::map<PointId, std::vector<const Episode*>> per_point;
    for (const auto& ep : outcome.episodes) per_point[ep.point].push_back(&ep);

    for (const auto& p : outcome.points) {
        const auto it = per_point.find(p.id);
        const std::size_t n_eps = it == per_point.end() ? 0 : it->second.size();
        if (n_eps > 1) {
            issues.push_back("point " + id_str(p.id) + " has more than one special episode");
            continue;
        }
        double want_start = kNoDeath, want_end = kNoDeath;
        std::optional<Mark> want_kind;
        if (p.initial) {
            want_kind = Mark::Zombie;
            want_start = p.birth;
            want_end = p.augmented_death;
        } else if (p.empty_death < p.augmented_death && p.empty_death < kNoDeath) {
            want_kind = Mark::Zombie;
            want_start = p.empty_death;
            want_end = p.augmented_death;
        } else if (p.augmented_death < p.empty_death && p.augmented_death < kNoDeath) {
            want_kind = Mark::Antizombie;
            want_start = p.augmented_death;
            want_end = p.empty_death;
        }
        if (!want_kind) {
            if (n_eps != 0) issues.push_back("point " + id_str(p.id) + " logged an episode but was never special");
            continue;
        }
        if (n_eps == 0) {
            issues.push_back("point " + id_str(p.id) + " was special but logged no episode");
            continue;
        }
        const Episode& ep = *it->second.front();
        if (ep.kind != *want_kind || ep.start != want_start || ep.end != want_end)
            issues.push_back("episode of " + id_str(p.id) + " disagrees with its death times");
        if (!p.ancestor || ep.ancestor != *p.ancestor)
            issues.push_back("episode ancestor of " + id_str(p.id) + " disagrees with the family map");
        // azconds spot checks just inside the episode
        const double mid = std::isfinite(ep.end) ? 0.5 * (ep.start + ep.end) : ep.start;
        const auto m = p.mark_at(mid);
        if (!m || *m != *want_kind)
            issues.push_back("mark of " + id_str(p.id) + " inside its episode is wrong");
    }

    // families of distinct ancestors are disjoint by the single-ancestor map;
    // verify every special has an ancestor and ancestors are initial points
    for (const auto& p : outcome.points) {
        if (p.ancestor) {
            const auto a = by_id.find(*p.ancestor);
            if (a == by_id.end() || !a->second->initial)
                issues.push_back("ancestor of " + id_str(p.id) + " is not an initial point");
        }
    }

    // zombies and antizombies never realize a duel
    for (const auto& ev : outcome.events) {
        const bool opposite = (ev.first_mark == Mark::Zombie && ev.second_mark == Mark::Antizombie) ||
                              (ev.first_mark == Mark::Antizombie && ev.second_mark == Mark::Zombie);
        if (opposite && ev.realized)
            issues.push_back("opposite special kinds realized a duel at t=" + std::to_string(ev.time));
        if (!opposite && !ev.realized)
            issues.push_back("compatible duel recorded as a no-op at t=" + std::to_string(ev.time));
    }
    return issues;
}

ConsistencyReport consistency_check(const CoupledOutcome& coupled, const PointList& initial,
                                    const PointList& rain, const DuelSource& source,
                                    const Window& window, double t0, double t1) {
    ConsistencyReport report;
    ResolveOptions opts; // defaults; the outcome is order- and variant-independent
    const auto plain_empty = resolve(rain, source, window, t0, t1, opts);
    const auto plain_aug = resolve_with_initial(initial, rain, source, window, t0, t1, opts);

    std::map<PointId, double> d_empty, d_aug;
    for (const auto& p : plain_empty.points) d_empty[p.id] = p.death;
    for (const auto& p : plain_aug.points) d_aug[p.id] = p.death;

    for (const auto& p : coupled.points) {
        ++report.compared;
        if (!p.initial) {
            const double d = d_empty.at(p.id);
            if (d != p.empty_death)
                report.mismatches.push_back("empty-side death of " + id_str(p.id) + " differs");
        }
        const double dp = d_aug.at(p.id);
        if (dp != p.augmented_death)
            report.mismatches.push_back("augmented-side death of " + id_str(p.id) + " differs");
    }
    return report;
}

std::vector<FamilyStat> family_stats(const CoupledOutcome& outcome) {
    std::map<PointId, FamilyStat> stats;
    for (const auto& p : outcome.points)
        if (p.initial) stats[p.id] = FamilyStat{p.id, 0, 0.0, 0, 0};

    for (const auto& p : outcome.points) {
        if (!p.ancestor) continue;
        auto& st = stats.at(*p.ancestor);
        ++st.size;
    }
    for (const auto& ep : outcome.episodes) {
        auto& st = stats.at(ep.ancestor);
        if (ep.kind == Mark::Zombie)
            ++st.zombie_episodes;
        else
            ++st.antizombie_episodes;
        st.extinction_time = std::max(st.extinction_time, ep.end);
    }
    std::vector<FamilyStat> out;
    out.reserve(stats.size());
    for (auto& [id, st] : stats) out.push_back(st);
    return out;
}

} // namespace sbd
