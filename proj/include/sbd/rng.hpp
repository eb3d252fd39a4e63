#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace sbd::rng {

// Counter-based randomness. Every variate is a pure function of a 64-bit
// key built by folding (seed, purpose tag, identifiers, counter) through a
// splitmix64-style avalanche. There is no sequential generator state, so
// query order and query count never matter; that property is what makes the
// pair oracle order-independent and lets the coupled engines share
// randomness exactly.

inline constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ull;

inline uint64_t mix64(uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Stream purposes. Values are part of the reproducibility contract: changing
// them changes every sampled path.
enum class Tag : uint64_t {
    DuelTime = 1,
    DuelDirection = 2,
    RainCount = 3,
    RainPoint = 4,
    InitialCondition = 5,
    JumpEngine = 6,
    Shuffle = 7,
    Replicate = 8,
    Thinning = 9,
};

// Immutable key; with() derives a child key. Cheap value type.
class Key {
public:
    explicit Key(uint64_t seed) : state_(mix64(seed ^ 0x5bd1e995u)) {}

    [[nodiscard]] Key with(uint64_t word) const {
        Key k = *this;
        k.state_ = mix64(k.state_ ^ (word + kGolden));
        return k;
    }
    [[nodiscard]] Key with(Tag tag) const { return with(static_cast<uint64_t>(tag) * 0x100000001b3ull); }

    [[nodiscard]] uint64_t bits(uint64_t counter) const { return mix64(state_ ^ mix64(counter)); }

    // Uniform on (0,1), never exactly 0 or 1.
    [[nodiscard]] double uniform01(uint64_t counter) const {
        return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
    }

    // Exponential with the given rate; +inf when the rate is zero.
    [[nodiscard]] double exponential(double rate, uint64_t counter) const {
        if (rate <= 0.0) return std::numeric_limits<double>::infinity();
        return -std::log(uniform01(counter)) / rate;
    }

    [[nodiscard]] bool coin(uint64_t counter) const { return (bits(counter) & 1ull) != 0; }

    // Poisson count via exponential spacings: largest n with sum of n
    // Exp(1) variates below mean. Linear in the result, stable for large means.
    [[nodiscard]] uint64_t poisson(double mean, uint64_t counter_base = 0) const {
        if (mean <= 0.0) return 0;
        uint64_t n = 0;
        double acc = 0.0;
        while (true) {
            acc += -std::log(uniform01(counter_base + n));
            if (acc > mean) return n;
            ++n;
        }
    }

    [[nodiscard]] uint64_t raw() const { return state_; }

private:
    uint64_t state_;
};

} // namespace sbd::rng
