#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "sbd/errors.hpp"
#include "sbd/points.hpp"
#include "sbd/rng.hpp"

namespace sbd::detail {

struct Card {
    uint32_t owner;
    uint32_t other;
    double time;
};

// Sorted latest-first: the earliest card sits at the back.
using Stack = std::vector<Card>;

inline void sort_stack(Stack& s) {
    std::sort(s.begin(), s.end(), [](const Card& a, const Card& b) { return a.time > b.time; });
}

// Canonical enumeration is lexicographic on (namespace, index); the shuffled
// mode exists to exercise order-independence.
inline std::vector<uint32_t> enumeration_order(const PointList& points, bool shuffled,
                                               uint64_t shuffle_seed) {
    std::vector<uint32_t> order(points.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](uint32_t a, uint32_t b) { return points[a].id < points[b].id; });
    if (shuffled) {
        const auto key = rng::Key(shuffle_seed).with(rng::Tag::Shuffle);
        for (std::size_t i = order.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(key.uniform01(i) * static_cast<double>(i));
            std::swap(order[i - 1], order[std::min(j, i - 1)]);
        }
    }
    return order;
}

inline void check_distinct_times(std::vector<double>& times) {
    std::sort(times.begin(), times.end());
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] == times[i - 1])
            throw NondistinctDuelTimesError("two duel times collided exactly; change the seed");
}

} // namespace sbd::detail
