#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rackplan/geometry.hpp"
#include "rackplan/grid_map.hpp"

namespace rackplan {

// Static per-cell index of the K nearest rack homes by Manhattan distance,
// ties by rack id. Rack homes never move, so the index is built once per
// layout.
class NearestRackIndex {
public:
    NearestRackIndex(const GridMap& g, int fanout);  // throws ConfigError

    std::span<const int32_t> nearest(Location l) const {
        return {&lists_[size_t(grid_->cell_index(l)) * fanout_], size_t(fanout_)};
    }

    int fanout() const { return fanout_; }

private:
    const GridMap* grid_;
    int fanout_;
    std::vector<int32_t> lists_;
};

}  // namespace rackplan
