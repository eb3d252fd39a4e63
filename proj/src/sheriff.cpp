#include "sbd/sheriff.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

#include "sbd/errors.hpp"
#include "sbd/grid.hpp"
#include "sbd/detail/duel_stacks.hpp"

namespace sbd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using detail::Card;
using detail::Stack;

struct Certificates {
    std::vector<char> dead;
    std::vector<double> time;
    std::vector<uint32_t> killer;

    explicit Certificates(std::size_t n) : dead(n, 0), time(n, kInf), killer(n, 0) {}

    void certify(uint32_t p, uint32_t by, double at) {
        assert(!dead[p]);
        dead[p] = 1;
        time[p] = at;
        killer[p] = by;
    }
};

class Resolver {
public:
    Resolver(const PointList& points, const DuelSource& source, const Window& window, double t1,
             const ResolveOptions& options)
        : points_(points), source_(source), options_(options), t1_(t1), stacks_(points.size()),
          certs_(points.size()) {
        build_stacks(window);
    }

    void run() {
        const uint64_t budget = options_.budget_factor * std::max<uint64_t>(card_count_, 1) + 1024;
        const auto order = detail::enumeration_order(
            points_, options_.ordering.mode == Ordering::Mode::Shuffled, options_.ordering.shuffle_seed);
        std::size_t cursor = 0;
        std::vector<Card> is; // investigation stack

        while (true) {
            if (is.empty()) {
                while (cursor < order.size() && !eligible(order[cursor])) ++cursor;
                if (cursor == order.size()) break;
                const uint32_t p = order[cursor];
                if (options_.variant == Variant::SingleCard) {
                    is.push_back(stacks_[p].back());
                    stacks_[p].pop_back();
                } else {
                    is.push_back(stacks_[p].back());
                }
            }
            max_is_depth_ = std::max(max_is_depth_, is.size());
            if (++steps_ > budget)
                throw InvestigationBudgetError("investigation budget exceeded");

            const Card card = is.back();
            if (options_.variant == Variant::SingleCard) {
                step_single(card, is);
            } else {
                step_double(card, is);
            }
        }
    }

    ResolutionOutcome finish(double t0) && {
        ResolutionOutcome out;
        out.points = points_;
        out.t0 = t0;
        out.t1 = t1_;
        out.investigation_steps = steps_;
        out.max_stack_depth = max_is_depth_;
        out.card_count = card_count_;
        for (uint32_t i = 0; i < out.points.size(); ++i) {
            if (certs_.dead[i]) {
                out.points[i].death = certs_.time[i];
                out.points[i].killer = points_[certs_.killer[i]].id;
            } else {
                out.points[i].death = kNoDeath;
                out.points[i].killer.reset();
                out.alive_at_horizon.push_back(i);
            }
        }
        return out;
    }

private:
    [[nodiscard]] bool eligible(uint32_t p) const { return !certs_.dead[p] && !stacks_[p].empty(); }

    void build_stacks(const Window& window) {
        std::vector<Vec> xs(points_.size());
        for (std::size_t i = 0; i < points_.size(); ++i) xs[i] = points_[i].x;
        NeighborGrid grid(xs, window, source_.interaction_radius());

        std::vector<double> all_times;
        std::vector<uint32_t> nbrs;
        for (uint32_t i = 0; i < points_.size(); ++i) {
            grid.query(points_[i].x, nbrs, i);
            for (uint32_t j : nbrs) {
                if (j <= i) continue; // each unordered pair once
                const double t = source_.duel_time(points_[i], points_[j]);
                if (!(t < t1_)) continue;
                all_times.push_back(t);
                ++card_count_;
                if (options_.variant == Variant::DoubleCard) {
                    stacks_[i].push_back({i, j, t});
                    stacks_[j].push_back({j, i, t});
                } else {
                    // direction drawn up front: the stack holds the victim's sentence
                    if (source_.kills(points_[i], points_[j]))
                        stacks_[i].push_back({i, j, t});
                    else
                        stacks_[j].push_back({j, i, t});
                }
            }
        }
        detail::check_distinct_times(all_times);
        for (auto& s : stacks_) detail::sort_stack(s);
    }

    // Single-card step: the card on the investigation stack is a sentence
    // "other kills owner at time".
    void step_single(const Card& card, std::vector<Card>& is) {
        const uint32_t q = card.other;
        if (certs_.dead[q]) {
            if (certs_.time[q] > card.time) {
                certs_.certify(card.owner, q, card.time);
            }
            // either way the sentence is resolved
            is.pop_back();
            return;
        }
        const double q_top = stacks_[q].empty() ? kInf : stacks_[q].back().time;
        if (q_top > card.time) {
            // q alive at the execution time
            certs_.certify(card.owner, q, card.time);
            is.pop_back();
            return;
        }
        // investigate q's earlier sentence first
        is.push_back(stacks_[q].back());
        stacks_[q].pop_back();
    }

    // Double-card step: both duelists hold a copy; the direction is drawn
    // only when the duel is realized.
    void step_double(const Card& card, std::vector<Card>& is) {
        const uint32_t p = card.owner;
        const uint32_t q = card.other;
        if (certs_.dead[q]) {
            assert(certs_.time[q] < card.time);
            assert(!stacks_[p].empty() && stacks_[p].back().time == card.time);
            stacks_[p].pop_back();
            is.pop_back();
            return;
        }
        assert(!stacks_[q].empty());
        const Card q_top = stacks_[q].back();
        if (q_top.time < card.time) {
            is.push_back(q_top);
            return;
        }
        // q's top is the twin card: realize the duel now
        assert(q_top.other == p && q_top.time == card.time);
        const uint32_t loser = source_.kills(points_[p], points_[q]) ? p : q;
        const uint32_t winner = loser == p ? q : p;
        stacks_[p].pop_back();
        stacks_[q].pop_back();
        certs_.certify(loser, winner, card.time);
        is.pop_back();
    }

    const PointList& points_;
    const DuelSource& source_;
    const ResolveOptions& options_;
    double t1_;
    std::vector<Stack> stacks_;
    Certificates certs_;
    uint64_t steps_ = 0;
    std::size_t max_is_depth_ = 0;
    std::size_t card_count_ = 0;
};

} // namespace

ResolutionOutcome resolve(PointList points, const DuelSource& source, const Window& window,
                          double t0, double t1, const ResolveOptions& options) {
    for (const auto& p : points)
        if (!(p.birth < t1)) throw ConfigError("all birth times must precede the horizon");
    Resolver r(points, source, window, t1, options);
    r.run();
    return std::move(r).finish(t0);
}

ResolutionOutcome resolve_with_initial(const PointList& initial, const PointList& rain,
                                       const DuelSource& source, const Window& window, double t0,
                                       double t1, const ResolveOptions& options) {
    for (const auto& p : initial) {
        if (p.birth != t0) throw ConfigError("initial points must be born at t0");
        if (p.id.ns != IdSpace::Augmentation) throw ConfigError("initial points use the augmentation namespace");
    }
    PointList all;
    all.reserve(initial.size() + rain.size());
    all.insert(all.end(), initial.begin(), initial.end());
    all.insert(all.end(), rain.begin(), rain.end());
    return resolve(std::move(all), source, window, t0, t1, options);
}

ResolutionOutcome extend(const ResolutionOutcome& prev, const PointList& new_rain,
                         const DuelSource& source, const Window& window, double t2,
                         const ResolveOptions& options) {
    if (!(t2 >= prev.t1)) throw ConfigError("extend needs t2 >= t1");
    if (t2 == prev.t1 && new_rain.empty()) return prev;
    for (const auto& p : new_rain)
        if (!(p.birth > prev.t1)) throw ConfigError("extension rain must be born after t1");

    PointList carry;
    carry.reserve(prev.alive_at_horizon.size() + new_rain.size());
    for (uint32_t i : prev.alive_at_horizon) carry.push_back(prev.points[i]);
    carry.insert(carry.end(), new_rain.begin(), new_rain.end());

    auto cont = resolve(std::move(carry), source, window, prev.t0, t2, options);

    ResolutionOutcome out;
    out.t0 = prev.t0;
    out.t1 = t2;
    out.investigation_steps = prev.investigation_steps + cont.investigation_steps;
    out.max_stack_depth = std::max(prev.max_stack_depth, cont.max_stack_depth);
    out.card_count = prev.card_count + cont.card_count;
    out.points = prev.points;
    // overwrite the survivors' records with their continued fate
    std::size_t k = 0;
    for (uint32_t i : prev.alive_at_horizon) out.points[i] = cont.points[k++];
    for (; k < cont.points.size(); ++k) out.points.push_back(cont.points[k]);
    for (uint32_t i = 0; i < out.points.size(); ++i)
        if (out.points[i].death == kNoDeath) out.alive_at_horizon.push_back(i);
    return out;
}

std::vector<PointId> snapshot_ids(const ResolutionOutcome& outcome, double t) {
    if (t < outcome.t0 || t > outcome.t1) throw ConfigError("snapshot time outside the horizon");
    std::vector<PointId> ids;
    for (const auto& p : outcome.points)
        if (p.alive_at(t)) ids.push_back(p.id);
    return ids;
}

std::vector<Vec> snapshot_positions(const ResolutionOutcome& outcome, double t) {
    if (t < outcome.t0 || t > outcome.t1) throw ConfigError("snapshot time outside the horizon");
    std::vector<Vec> xs;
    for (const auto& p : outcome.points)
        if (p.alive_at(t)) xs.push_back(p.x);
    return xs;
}

} // namespace sbd
