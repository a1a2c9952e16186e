#pragma once

#include <optional>
#include <vector>

#include "rackplan/cdt.hpp"
#include "rackplan/geometry.hpp"
#include "rackplan/grid_map.hpp"
#include "rackplan/path.hpp"

namespace rackplan {

class PathCache;

struct SearchContext {
    const GridMap* grid = nullptr;
    const ConflictDetectionTable* cdt = nullptr;
    // cell -> nonzero if an idle robot occupies it indefinitely; such cells
    // are blocked at every tick except as the query's own source.
    const std::vector<uint8_t>* parked = nullptr;
};

struct SearchQuery {
    Location src;
    Location dst;
    Tick start = 0;
    // The robot stays at dst after arrival (return legs): the goal is only
    // accepted once no reservation at dst lies at or after the arrival tick.
    bool park_at_goal = false;
};

struct SearchStats {
    size_t open_peak = 0;
    size_t expanded = 0;
};

// Time-expanded A* over (cell, tick) with wait moves, h = manhattan to dst.
// Ties broken toward larger depth, then by move order (wait, up, down,
// left, right). Returns the earliest-arrival conflict-free path, or nullopt
// once explored times pass the search horizon.
std::optional<Path> astar(const SearchContext& ctx, const SearchQuery& q,
                          SearchStats* stats = nullptr);

// A* that short-circuits once a popped vertex lies within the cache
// threshold of dst: the cached static-shortest tail is executed verbatim,
// waiting in place whenever the next move would conflict. Falls back to
// normal expansion when no wait-schedule works.
std::optional<Path> cache_aided_astar(const SearchContext& ctx, const PathCache& cache,
                                      const SearchQuery& q, SearchStats* stats = nullptr);

}  // namespace rackplan
