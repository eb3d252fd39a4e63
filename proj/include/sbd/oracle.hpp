#pragma once

#include <cstdint>

#include "sbd/points.hpp"
#include "sbd/response.hpp"

namespace sbd {

// Source of the per-pair duel variables: the time T at which the pair
// realizes its lethal connection, and the direction deciding who dies.
// Implementations must be pure (same pair, same answer, any query order) and
// symmetric: duel_time(p,q) == duel_time(q,p) and the directions of the two
// orientations are complementary.
class DuelSource {
public:
    virtual ~DuelSource() = default;

    // (b_p v b_q) + Exp(2 f(dist)); +inf when f(dist) == 0.
    [[nodiscard]] virtual double duel_time(const PointRecord& p, const PointRecord& q) const = 0;

    // True when q kills p (p dies at the duel time if both live).
    [[nodiscard]] virtual bool kills(const PointRecord& p, const PointRecord& q) const = 0;

    // Distance beyond which duel_time is +inf; +inf means every pair duels.
    [[nodiscard]] virtual double interaction_radius() const = 0;
};

// Counter-based realization keyed on (seed, unordered id pair). The draw
// never depends on query order or count, which is what the order-independence
// of the resolution and the shared-randomness coupling both require.
class PairOracle final : public DuelSource {
public:
    PairOracle(uint64_t seed, const ResponseFunction& rf, const Window& window);

    [[nodiscard]] double duel_time(const PointRecord& p, const PointRecord& q) const override;
    [[nodiscard]] bool kills(const PointRecord& p, const PointRecord& q) const override;
    [[nodiscard]] double interaction_radius() const override { return rf_->support_radius(); }

    [[nodiscard]] const ResponseFunction& response() const { return *rf_; }
    [[nodiscard]] const Window& window() const { return *window_; }
    [[nodiscard]] uint64_t seed() const { return seed_; }

private:
    [[nodiscard]] static uint64_t pair_word(PointId a, PointId b);

    uint64_t seed_;
    const ResponseFunction* rf_;
    const Window* window_;
};

} // namespace sbd
