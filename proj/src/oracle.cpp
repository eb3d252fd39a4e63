#include "sbd/oracle.hpp"

#include <algorithm>
#include <limits>

#include "sbd/errors.hpp"
#include "sbd/rng.hpp"

namespace sbd {

PairOracle::PairOracle(uint64_t seed, const ResponseFunction& rf, const Window& window)
    : seed_(seed), rf_(&rf), window_(&window) {
    if (rf.dim() != window.dim) throw ConfigError("kernel and window dimensions differ");
}

uint64_t PairOracle::pair_word(PointId a, PointId b) {
    if (b < a) std::swap(a, b);
    const auto word = [](PointId id) {
        return (static_cast<uint64_t>(id.ns) << 32) | static_cast<uint64_t>(id.index);
    };
    return rng::mix64(word(a)) ^ (word(b) * rng::kGolden);
}

double PairOracle::duel_time(const PointRecord& p, const PointRecord& q) const {
    const double rate = 2.0 * rf_->eval(window_->distance(p.x, q.x));
    if (rate <= 0.0) return std::numeric_limits<double>::infinity();
    const double e = rng::Key(seed_).with(rng::Tag::DuelTime).exponential(rate, pair_word(p.id, q.id));
    return std::max(p.birth, q.birth) + e;
}

bool PairOracle::kills(const PointRecord& p, const PointRecord& q) const {
    const bool low_dies = rng::Key(seed_).with(rng::Tag::DuelDirection).coin(pair_word(p.id, q.id));
    const bool p_is_low = p.id < q.id;
    return p_is_low ? low_dies : !low_dies;
}

} // namespace sbd
