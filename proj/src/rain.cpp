#include "sbd/rain.hpp"

#include <algorithm>
#include <cmath>

#include "sbd/errors.hpp"
#include "sbd/rng.hpp"

namespace sbd {

PointList sample_rain(const Window& window, double lambda, double t0, double t1, uint64_t seed,
                      uint32_t start_index, double expected_cap) {
    if (!(t0 < t1)) throw ConfigError("rain interval needs t0 < t1");
    if (lambda < 0.0) throw ConfigError("lambda must be non-negative");
    const double mean = lambda * window.volume() * (t1 - t0);
    if (mean > expected_cap) throw OverflowError("expected rain count exceeds cap");
    PointList out;
    if (lambda == 0.0) return out;
    out.reserve(static_cast<std::size_t>(mean * 1.1) + 16);

    const auto key = rng::Key(seed).with(rng::Tag::RainCount);
    const auto pt_key = rng::Key(seed).with(rng::Tag::RainPoint);
    const double slab_mean = lambda * window.volume();

    const auto lo_slab = static_cast<int64_t>(std::floor(t0));
    const auto hi_slab = static_cast<int64_t>(std::floor(std::nextafter(t1, t0)));
    for (int64_t slab = lo_slab; slab <= hi_slab; ++slab) {
        const auto slab_word = static_cast<uint64_t>(slab);
        const uint64_t count = key.with(slab_word).poisson(slab_mean);
        const auto k = pt_key.with(slab_word);
        PointList slab_pts;
        slab_pts.reserve(count);
        for (uint64_t i = 0; i < count; ++i) {
            PointRecord p;
            const uint64_t base = i * 4;
            p.birth = static_cast<double>(slab) + k.uniform01(base);
            if (!(t0 < p.birth && p.birth <= t1)) continue;
            for (int c = 0; c < window.dim; ++c) p.x[c] = window.side * k.uniform01(base + 1 + c);
            slab_pts.push_back(p);
        }
        std::sort(slab_pts.begin(), slab_pts.end(),
                  [](const PointRecord& a, const PointRecord& b) { return a.birth < b.birth; });
        out.insert(out.end(), slab_pts.begin(), slab_pts.end());
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i].id = PointId{IdSpace::Rain, start_index + static_cast<uint32_t>(i)};
    return out;
}

PointList sample_poisson_initial(const Window& window, double beta, double t0, uint64_t seed,
                                 double expected_cap) {
    if (beta < 0.0) throw ConfigError("initial intensity must be non-negative");
    const double mean = beta * window.volume();
    if (mean > expected_cap) throw OverflowError("expected initial count exceeds cap");
    const auto root = rng::Key(seed).with(rng::Tag::InitialCondition);
    const uint64_t count = root.with(0).poisson(mean);
    const auto coord_key = root.with(1);
    PointList out;
    out.reserve(count);
    for (uint64_t i = 0; i < count; ++i) {
        PointRecord p;
        p.id = PointId{IdSpace::Augmentation, static_cast<uint32_t>(i)};
        p.birth = t0;
        for (int c = 0; c < window.dim; ++c)
            p.x[c] = window.side * coord_key.uniform01(i * 4 + static_cast<uint64_t>(c));
        out.push_back(p);
    }
    return out;
}

} // namespace sbd
