#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sbd/geometry.hpp"

namespace sbd {

// Uniform-grid spatial index over a fixed set of positions. Cell size never
// drops below the query radius, so a radius query only has to visit the
// 3^d block around the target cell. With an infinite radius the grid
// degenerates to a single cell and queries return every point.
class NeighborGrid {
public:
    NeighborGrid(std::span<const Vec> points, const Window& window, double radius);

    // Indices of points within radius of x (excluding exclude_index).
    void query(const Vec& x, std::vector<uint32_t>& out, int64_t exclude_index = -1) const;

    [[nodiscard]] std::vector<uint32_t> neighbors_of(uint32_t index) const;

    [[nodiscard]] double radius() const { return radius_; }

private:
    [[nodiscard]] int cell_coord(double x) const;
    [[nodiscard]] std::size_t cell_id(const int* coords) const;

    const Window* window_;
    std::vector<Vec> points_;
    double radius_;
    int cells_per_side_ = 1;
    std::vector<uint32_t> offsets_;
    std::vector<uint32_t> order_;
};

} // namespace sbd
