#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "sbd/geometry.hpp"

namespace sbd {

inline constexpr double kNoDeath = std::numeric_limits<double>::infinity();

// Rain points come from the Poisson birth process; augmentation points are
// the added initial condition. Keeping the namespaces disjoint gives every
// point a stable identity, so two engines fed the same seed consume
// identical pair randomness.
enum class IdSpace : uint8_t { Rain = 0, Augmentation = 1 };

struct PointId {
    IdSpace ns = IdSpace::Rain;
    uint32_t index = 0;

    friend bool operator==(const PointId&, const PointId&) = default;
    friend auto operator<=>(const PointId&, const PointId&) = default;
};

struct PointRecord {
    PointId id;
    Vec x{0.0, 0.0, 0.0};
    double birth = 0.0;
    double death = kNoDeath;
    std::optional<PointId> killer;

    [[nodiscard]] bool alive_at(double t) const { return birth <= t && t < death; }
};

using PointList = std::vector<PointRecord>;

} // namespace sbd
