#include "rackplan/path_cache.hpp"

#include <algorithm>
#include <queue>

#include "rackplan/errors.hpp"

namespace rackplan {

namespace {
constexpr int kDx[4] = {0, 0, -1, 1};
constexpr int kDy[4] = {-1, 1, 0, 0};
constexpr uint8_t kUnreached = 0xFF;
constexpr uint8_t kSource = 4;
}  // namespace

int static_distance(const GridMap& g, Location src, Location dst) {
    if (!g.ever_traversable(src) || !g.ever_traversable(dst)) return -1;
    if (src == dst) return 0;
    std::vector<int> dist(size_t(g.height) * g.width, -1);
    std::queue<Location> q;
    dist[g.cell_index(src)] = 0;
    q.push(src);
    while (!q.empty()) {
        Location c = q.front();
        q.pop();
        if (c != src && g.role(c) != CellRole::Aisle) continue;  // endpoints only
        for (int d = 0; d < 4; ++d) {
            Location m{c.x + kDx[d], c.y + kDy[d]};
            if (!g.in_bounds(m) || !g.ever_traversable(m)) continue;
            int mi = g.cell_index(m);
            if (dist[mi] >= 0) continue;
            dist[mi] = dist[g.cell_index(c)] + 1;
            if (m == dst) return dist[mi];
            q.push(m);
        }
    }
    return dist[g.cell_index(dst)];
}

PathCache::PathCache(const GridMap& g, int threshold)
    : grid_(&g), threshold_(threshold), n_(g.height * g.width) {
    if (threshold < 1) throw ConfigError("cache threshold must be >= 1");
    from_dir_.assign(size_t(n_) * n_, kUnreached);

    std::vector<int> frontier, next;
    for (int s = 0; s < n_; ++s) {
        Location src{s % g.width, s / g.width};
        if (!g.ever_traversable(src)) continue;
        uint8_t* dir = &from_dir_[size_t(s) * n_];
        dir[s] = kSource;
        frontier.assign(1, s);
        while (!frontier.empty()) {
            next.clear();
            for (int ci : frontier) {
                Location c{ci % g.width, ci / g.width};
                if (ci != s && g.role(c) != CellRole::Aisle) continue;  // endpoints only
                for (int d = 0; d < 4; ++d) {
                    Location m{c.x + kDx[d], c.y + kDy[d]};
                    if (!g.in_bounds(m) || !g.ever_traversable(m)) continue;
                    int mi = g.cell_index(m);
                    if (dir[mi] != kUnreached) continue;
                    dir[mi] = uint8_t(d);
                    next.push_back(mi);
                }
            }
            frontier.swap(next);
        }
    }
}

bool PathCache::has_entry(Location src, Location dst) const {
    const GridMap& g = *grid_;
    if (!g.in_bounds(src) || !g.in_bounds(dst)) return false;
    if (src == dst) return false;
    Tick md = manhattan(src, dst);
    if (md > threshold_) return false;
    if (!g.ever_traversable(src) || !g.ever_traversable(dst)) return false;
    return from_dir_[size_t(g.cell_index(src)) * n_ + g.cell_index(dst)] != kUnreached;
}

std::optional<std::vector<Location>> PathCache::shape(Location src, Location dst) const {
    const GridMap& g = *grid_;
    if (src == dst) return std::vector<Location>{src};
    if (!has_entry(src, dst)) return std::nullopt;
    const uint8_t* dir = &from_dir_[size_t(g.cell_index(src)) * n_];
    std::vector<Location> cells;
    Location c = dst;
    while (c != src) {
        cells.push_back(c);
        uint8_t d = dir[g.cell_index(c)];
        c = {c.x - kDx[d], c.y - kDy[d]};
    }
    cells.push_back(src);
    std::reverse(cells.begin(), cells.end());
    return cells;
}

int PathCache::shape_length(Location src, Location dst) const {
    auto s = shape(src, dst);
    return s ? int(s->size()) - 1 : -1;
}

size_t PathCache::entry_count() const {
    const GridMap& g = *grid_;
    size_t count = 0;
    for (int a = 0; a < n_; ++a) {
        Location la{a % g.width, a / g.width};
        if (!g.ever_traversable(la)) continue;
        for (int b = 0; b < n_; ++b) {
            Location lb{b % g.width, b / g.width};
            if (a != b && has_entry(la, lb)) ++count;
        }
    }
    return count;
}

}  // namespace rackplan
