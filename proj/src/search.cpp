#include "rackplan/search.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "rackplan/path_cache.hpp"

namespace rackplan {

namespace {

// move order: wait, up, down, left, right
constexpr int kDx[5] = {0, 0, 0, -1, 1};
constexpr int kDy[5] = {0, -1, 1, 0, 0};

struct Node {
    Tick f;
    Tick g;
    uint64_t seq;
    Location loc;
    Tick t;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g;  // deeper first
        return a.seq > b.seq;
    }
};

uint64_t node_key(const GridMap& g, Location l, Tick t) {
    return (uint64_t(g.cell_index(l)) << 40) | uint64_t(t);
}

bool cell_enterable(const SearchContext& ctx, const SearchQuery& q, Location c) {
    const GridMap& g = *ctx.grid;
    if (!g.in_bounds(c)) return false;
    if (ctx.parked && (*ctx.parked)[g.cell_index(c)] && c != q.src) return false;
    switch (g.role(c)) {
        case CellRole::Aisle:
            return true;
        case CellRole::PickerStation:
        case CellRole::Storage:
            // endpoint-only cells; plain storage has no endpoint use either
            return (c == q.src || c == q.dst) && g.ever_traversable(c);
    }
    return false;
}

// Executes a cached shape from (shape[0], t0), inserting waits until each
// next move passes the conflict table. Returns the appended steps or nullopt
// when a wait itself collides or the horizon runs out.
std::optional<std::vector<PathStep>> derive_tail(const SearchContext& ctx, const SearchQuery& q,
                                                 const std::vector<Location>& shape, Tick t0,
                                                 Tick horizon) {
    const GridMap& g = *ctx.grid;
    for (size_t i = 1; i < shape.size(); ++i)
        if (ctx.parked && (*ctx.parked)[g.cell_index(shape[i])] && shape[i] != q.src)
            return std::nullopt;

    std::vector<PathStep> steps;
    Location cur = shape[0];
    Tick tau = t0;
    for (size_t i = 1; i < shape.size(); ++i) {
        Location next = shape[i];
        const bool final_move = (i + 1 == shape.size());
        while (ctx.cdt->blocks_move(cur, next, tau) ||
               (final_move && q.park_at_goal && ctx.cdt->last_reserved_at(next) >= tau + 1)) {
            if (ctx.cdt->blocks_move(cur, cur, tau)) return std::nullopt;
            if (tau + 1 > horizon) return std::nullopt;
            ++tau;
            steps.push_back({tau, cur});
        }
        if (tau + 1 > horizon) return std::nullopt;
        ++tau;
        steps.push_back({tau, next});
        cur = next;
    }
    return steps;
}

std::optional<Path> search_impl(const SearchContext& ctx, const SearchQuery& q,
                                const PathCache* cache, SearchStats* stats) {
    const GridMap& g = *ctx.grid;
    const ConflictDetectionTable& cdt = *ctx.cdt;

    if (!g.ever_traversable(q.src) || !g.ever_traversable(q.dst)) return std::nullopt;
    if (cdt.cell_reserved(q.src, q.start)) return std::nullopt;
    if (ctx.parked && (*ctx.parked)[g.cell_index(q.dst)] && q.dst != q.src) return std::nullopt;

    const Tick horizon =
        std::max(q.start, cdt.max_reserved_time()) + 4 * Tick(g.height + g.width);

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    std::unordered_set<uint64_t> visited;
    std::unordered_map<uint64_t, Location> parent;

    uint64_t seq = 0;
    open.push({manhattan(q.src, q.dst), 0, seq++, q.src, q.start});
    visited.insert(node_key(g, q.src, q.start));
    size_t open_peak = 1;
    size_t expanded = 0;

    auto reconstruct = [&](Location loc, Tick t, const std::vector<PathStep>* tail) {
        std::vector<PathStep> steps;
        Location c = loc;
        for (Tick tt = t; tt > q.start; --tt) {
            steps.push_back({tt, c});
            c = parent.at(node_key(g, c, tt));
        }
        steps.push_back({q.start, q.src});
        std::reverse(steps.begin(), steps.end());
        if (tail) steps.insert(steps.end(), tail->begin(), tail->end());
        Path p;
        p.steps = std::move(steps);
        return p;
    };

    while (!open.empty()) {
        Node n = open.top();
        open.pop();
        ++expanded;

        if (n.loc == q.dst) {
            if (q.park_at_goal && cdt.last_reserved_at(q.dst) >= n.t) continue;
            if (stats) {
                stats->open_peak = std::max(stats->open_peak, open_peak);
                stats->expanded = expanded;
            }
            return reconstruct(n.loc, n.t, nullptr);
        }

        if (cache && manhattan(n.loc, q.dst) <= cache->threshold()) {
            if (auto shape = cache->shape(n.loc, q.dst)) {
                if (auto tail = derive_tail(ctx, q, *shape, n.t, horizon)) {
                    if (stats) {
                        stats->open_peak = std::max(stats->open_peak, open_peak);
                        stats->expanded = expanded;
                    }
                    return reconstruct(n.loc, n.t, &*tail);
                }
            }
        }

        if (n.t + 1 > horizon) continue;
        for (int d = 0; d < 5; ++d) {
            Location m{n.loc.x + kDx[d], n.loc.y + kDy[d]};
            if (!cell_enterable(ctx, q, m)) continue;
            uint64_t key = node_key(g, m, n.t + 1);
            if (visited.count(key)) continue;
            if (cdt.blocks_move(n.loc, m, n.t)) continue;
            visited.insert(key);
            parent.emplace(key, n.loc);
            open.push({(n.t + 1 - q.start) + manhattan(m, q.dst), n.t + 1 - q.start, seq++, m,
                       n.t + 1});
            open_peak = std::max(open_peak, open.size());
        }
    }
    if (stats) {
        stats->open_peak = std::max(stats->open_peak, open_peak);
        stats->expanded = expanded;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Path> astar(const SearchContext& ctx, const SearchQuery& q, SearchStats* stats) {
    return search_impl(ctx, q, nullptr, stats);
}

std::optional<Path> cache_aided_astar(const SearchContext& ctx, const PathCache& cache,
                                      const SearchQuery& q, SearchStats* stats) {
    return search_impl(ctx, q, &cache, stats);
}

}  // namespace rackplan
