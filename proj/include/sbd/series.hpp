#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "sbd/errors.hpp"

namespace sbd {

// Time- or radius-indexed Monte-Carlo estimate: per grid cell a running
// mean/variance in Welford form, so replicate batches merge exactly as if
// pooled. Merging two series with different grids is an error.
class EstimateSeries {
public:
    EstimateSeries() = default;
    explicit EstimateSeries(std::vector<double> grid)
        : grid_(std::move(grid)), n_(grid_.size(), 0), mean_(grid_.size(), 0.0), m2_(grid_.size(), 0.0) {}

    [[nodiscard]] const std::vector<double>& grid() const { return grid_; }
    [[nodiscard]] std::size_t cells() const { return grid_.size(); }

    void add(std::size_t cell, double value) {
        auto& n = n_[cell];
        ++n;
        const double d = value - mean_[cell];
        mean_[cell] += d / static_cast<double>(n);
        m2_[cell] += d * (value - mean_[cell]);
    }

    [[nodiscard]] std::size_t count(std::size_t cell) const { return n_[cell]; }
    [[nodiscard]] double mean(std::size_t cell) const { return mean_[cell]; }
    [[nodiscard]] double variance(std::size_t cell) const {
        return n_[cell] > 1 ? m2_[cell] / static_cast<double>(n_[cell] - 1) : 0.0;
    }
    [[nodiscard]] double stderror(std::size_t cell) const {
        return n_[cell] > 1 ? std::sqrt(variance(cell) / static_cast<double>(n_[cell])) : 0.0;
    }

    // Pooled combination. Operands are folded in a canonical order per cell,
    // which makes the merge exactly commutative.
    [[nodiscard]] EstimateSeries merged(const EstimateSeries& other) const {
        if (grid_ != other.grid_) throw GridMismatchError("cannot merge series on different grids");
        EstimateSeries out(grid_);
        for (std::size_t c = 0; c < cells(); ++c) {
            const bool swap = (other.n_[c] < n_[c]) ||
                              (other.n_[c] == n_[c] &&
                               (other.mean_[c] < mean_[c] ||
                                (other.mean_[c] == mean_[c] && other.m2_[c] < m2_[c])));
            const EstimateSeries& a = swap ? other : *this;
            const EstimateSeries& b = swap ? *this : other;
            const double na = static_cast<double>(a.n_[c]);
            const double nb = static_cast<double>(b.n_[c]);
            const double n = na + nb;
            out.n_[c] = a.n_[c] + b.n_[c];
            if (out.n_[c] == 0) continue;
            const double delta = b.mean_[c] - a.mean_[c];
            out.mean_[c] = a.mean_[c] + delta * nb / n;
            out.m2_[c] = a.m2_[c] + b.m2_[c] + delta * delta * na * nb / n;
        }
        return out;
    }

private:
    std::vector<double> grid_;
    std::vector<std::size_t> n_;
    std::vector<double> mean_;
    std::vector<double> m2_;
};

// Paired accumulator for ratio- and difference-of-means estimates.
struct PairedMoments {
    std::size_t n = 0;
    double mean_x = 0.0, mean_y = 0.0;
    double mxx = 0.0, myy = 0.0, mxy = 0.0;

    void add(double x, double y) {
        ++n;
        const double dx = x - mean_x;
        mean_x += dx / static_cast<double>(n);
        const double dy = y - mean_y;
        mean_y += dy / static_cast<double>(n);
        mxx += dx * (x - mean_x);
        myy += dy * (y - mean_y);
        mxy += dx * (y - mean_y);
    }
    [[nodiscard]] double var_x() const { return n > 1 ? mxx / static_cast<double>(n - 1) : 0.0; }
    [[nodiscard]] double var_y() const { return n > 1 ? myy / static_cast<double>(n - 1) : 0.0; }
    [[nodiscard]] double cov() const { return n > 1 ? mxy / static_cast<double>(n - 1) : 0.0; }

    // mean_x / mean_y with a delta-method standard error.
    [[nodiscard]] std::pair<double, double> ratio() const {
        const double r = mean_x / mean_y;
        const double v = (var_x() - 2.0 * r * cov() + r * r * var_y()) /
                         (mean_y * mean_y * static_cast<double>(n));
        return {r, std::sqrt(std::max(0.0, v))};
    }
};

struct ValueWithError {
    double value = 0.0;
    double se = 0.0;
    [[nodiscard]] double z() const { return se > 0.0 ? value / se : 0.0; }
};

} // namespace sbd
