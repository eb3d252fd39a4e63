#include "sbd/grid.hpp"

#include <algorithm>
#include <cmath>

namespace sbd {

namespace {
// Keeps the total cell count from exploding when the radius is tiny.
int max_cells_per_side(int dim) {
    switch (dim) {
        case 1: return 4096;
        case 2: return 512;
        default: return 80;
    }
}
} // namespace

NeighborGrid::NeighborGrid(std::span<const Vec> points, const Window& window, double radius)
    : window_(&window), points_(points.begin(), points.end()), radius_(radius) {
    int m = 1;
    if (std::isfinite(radius) && radius > 0.0)
        m = std::max(1, static_cast<int>(std::floor(window.side / radius)));
    cells_per_side_ = std::min(m, max_cells_per_side(window.dim));

    std::size_t n_cells = 1;
    for (int d = 0; d < window.dim; ++d) n_cells *= static_cast<std::size_t>(cells_per_side_);

    std::vector<uint32_t> counts(n_cells, 0);
    std::vector<std::size_t> cell_of(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        int coords[3] = {0, 0, 0};
        for (int d = 0; d < window.dim; ++d) coords[d] = cell_coord(points_[i][d]);
        cell_of[i] = cell_id(coords);
        ++counts[cell_of[i]];
    }
    offsets_.assign(n_cells + 1, 0);
    for (std::size_t c = 0; c < n_cells; ++c) offsets_[c + 1] = offsets_[c] + counts[c];
    order_.resize(points_.size());
    std::vector<uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < points_.size(); ++i) order_[cursor[cell_of[i]]++] = static_cast<uint32_t>(i);
}

int NeighborGrid::cell_coord(double x) const {
    const double w = window_->wrap(x);
    int c = static_cast<int>(std::floor(w / window_->side * cells_per_side_));
    return std::clamp(c, 0, cells_per_side_ - 1);
}

std::size_t NeighborGrid::cell_id(const int* coords) const {
    std::size_t id = 0;
    for (int d = window_->dim - 1; d >= 0; --d)
        id = id * static_cast<std::size_t>(cells_per_side_) + static_cast<std::size_t>(coords[d]);
    return id;
}

void NeighborGrid::query(const Vec& x, std::vector<uint32_t>& out, int64_t exclude_index) const {
    out.clear();
    const int dim = window_->dim;
    int base[3] = {0, 0, 0};
    for (int d = 0; d < dim; ++d) base[d] = cell_coord(x[d]);

    const double r2 = radius_ * radius_;
    const bool infinite = !std::isfinite(radius_);
    const bool torus = window_->topology == Topology::Torus;

    // Visited cell ids; needed to dedupe when wrapping with < 3 cells per side.
    thread_local std::vector<std::size_t> visited;
    visited.clear();

    int off[3] = {-1, -1, -1};
    const int lo = (dim >= 1) ? -1 : 0;
    for (off[0] = lo; off[0] <= 1; ++off[0]) {
        for (off[1] = (dim >= 2 ? -1 : 0); off[1] <= (dim >= 2 ? 1 : 0); ++off[1]) {
            for (off[2] = (dim >= 3 ? -1 : 0); off[2] <= (dim >= 3 ? 1 : 0); ++off[2]) {
                int coords[3] = {0, 0, 0};
                bool valid = true;
                for (int d = 0; d < dim; ++d) {
                    int c = base[d] + off[d];
                    if (torus) {
                        c = (c + cells_per_side_) % cells_per_side_;
                    } else if (c < 0 || c >= cells_per_side_) {
                        valid = false;
                        break;
                    }
                    coords[d] = c;
                }
                if (!valid) continue;
                const std::size_t cid = cell_id(coords);
                if (std::find(visited.begin(), visited.end(), cid) != visited.end()) continue;
                visited.push_back(cid);
                for (uint32_t k = offsets_[cid]; k < offsets_[cid + 1]; ++k) {
                    const uint32_t j = order_[k];
                    if (static_cast<int64_t>(j) == exclude_index) continue;
                    if (infinite || window_->distance2(x, points_[j]) <= r2) out.push_back(j);
                }
            }
        }
    }
}

std::vector<uint32_t> NeighborGrid::neighbors_of(uint32_t index) const {
    std::vector<uint32_t> out;
    query(points_[index], out, index);
    return out;
}

} // namespace sbd
