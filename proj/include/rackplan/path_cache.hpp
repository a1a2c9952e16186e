#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rackplan/geometry.hpp"
#include "rackplan/grid_map.hpp"

namespace rackplan {

// Length of the static-obstacle shortest path between two traversable cells
// (transit through aisle cells only; src and dst enterable as endpoints).
// Returns -1 if unreachable.
int static_distance(const GridMap& g, Location src, Location dst);

// Conflict-ignorant shortest-path cache for all cell pairs within a
// Manhattan-distance threshold. Backed by one BFS tree per source cell, so
// a cached shape is recovered by walking predecessor directions. Immutable
// after construction and freely shareable.
class PathCache {
public:
    PathCache(const GridMap& g, int threshold);

    int threshold() const { return threshold_; }

    // True iff src != dst, 1 <= manhattan <= threshold and dst is reachable.
    bool has_entry(Location src, Location dst) const;

    // Cell sequence src..dst of static-shortest length; nullopt when the
    // pair has no entry. shape(c, c) is the trivial single-cell shape.
    std::optional<std::vector<Location>> shape(Location src, Location dst) const;

    // Cached shape length (moves), -1 when absent.
    int shape_length(Location src, Location dst) const;

    // Number of (src, dst) pairs with an entry; intended for tests.
    size_t entry_count() const;

private:
    const GridMap* grid_;
    int threshold_;
    int n_;
    // from_dir_[src * n + cell]: direction of the move that settled `cell`
    // in src's BFS (0..3), 4 for the source itself, 0xFF unreached.
    std::vector<uint8_t> from_dir_;
};

}  // namespace rackplan
