#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "sbd/errors.hpp"

namespace sbd {

// Coordinates are stored with fixed capacity 3; entries beyond the window
// dimension stay zero.
using Vec = std::array<double, 3>;

enum class Topology { Torus, Plain };

inline std::string to_string(Topology t) { return t == Topology::Torus ? "torus" : "plain"; }

// Finite simulation window: a cube [0,L)^d, either periodic or plain.
struct Window {
    int dim = 2;
    double side = 10.0;
    Topology topology = Topology::Torus;

    Window() = default;
    Window(int d, double L, Topology top) : dim(d), side(L), topology(top) {
        if (d < 1 || d > 3) throw ConfigError("window dimension must be 1, 2 or 3");
        if (!(L > 0.0)) throw ConfigError("window side must be positive");
    }

    [[nodiscard]] double volume() const { return std::pow(side, dim); }

    // Shortest per-axis displacement from a to b.
    [[nodiscard]] double axis_delta(double a, double b) const {
        double d = b - a;
        if (topology == Topology::Torus) {
            d -= side * std::round(d / side);
        }
        return d;
    }

    [[nodiscard]] double distance2(const Vec& a, const Vec& b) const {
        double s = 0.0;
        for (int i = 0; i < dim; ++i) {
            const double d = axis_delta(a[i], b[i]);
            s += d * d;
        }
        return s;
    }

    [[nodiscard]] double distance(const Vec& a, const Vec& b) const { return std::sqrt(distance2(a, b)); }

    // Maps a coordinate into [0, side).
    [[nodiscard]] double wrap(double x) const {
        double r = std::fmod(x, side);
        if (r < 0.0) r += side;
        return r;
    }

    [[nodiscard]] Vec wrap(Vec v) const {
        for (int i = 0; i < dim; ++i) v[i] = wrap(v[i]);
        return v;
    }

    // Largest distance realizable between two window points.
    [[nodiscard]] double max_distance() const {
        const double span = (topology == Topology::Torus) ? side / 2.0 : side;
        return span * std::sqrt(static_cast<double>(dim));
    }

    [[nodiscard]] bool contains(const Vec& v) const {
        for (int i = 0; i < dim; ++i)
            if (v[i] < 0.0 || v[i] >= side) return false;
        return true;
    }
};

// Volume of the d-dimensional unit ball.
inline double unit_ball_volume(int d) {
    return std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

// Volume of the spherical shell r0 <= r < r1 in dimension d.
inline double shell_volume(int d, double r0, double r1) {
    return unit_ball_volume(d) * (std::pow(r1, d) - std::pow(r0, d));
}

} // namespace sbd
