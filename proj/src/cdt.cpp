#include "rackplan/cdt.hpp"

#include <algorithm>
#include <string>

#include "rackplan/errors.hpp"

namespace rackplan {

int ConflictDetectionTable::direction(Location from, Location to) const {
    if (to.y == from.y - 1) return 0;
    if (to.y == from.y + 1) return 1;
    if (to.x == from.x - 1) return 2;
    return 3;
}

void ConflictDetectionTable::insert(const Path& p, size_t skip_front, size_t drop_back) {
    if (p.steps.size() < skip_front + drop_back) return;
    const size_t first = skip_front;
    const size_t last = p.steps.size() - drop_back;  // exclusive
    for (size_t i = first; i < last; ++i) {
        const PathStep& s = p.steps[i];
        const int cell = cell_index(s.loc);
        uint64_t key = cell_key(cell, s.t);
        if (!cell_res_.insert(key).second)
            throw ReservationClash("cell (" + std::to_string(s.loc.x) + "," +
                                   std::to_string(s.loc.y) + ") at t=" + std::to_string(s.t));
        cells_by_time_[s.t].push_back(key);
        last_reserved_[cell] = std::max(last_reserved_[cell], s.t);
        max_time_ = std::max(max_time_, s.t);
        if (i > 0 && p.steps[i - 1].loc != s.loc) {
            // move edge keyed by departure cell/tick; waits need no edge
            uint64_t ek = edge_key(cell_index(p.steps[i - 1].loc),
                                   direction(p.steps[i - 1].loc, s.loc), s.t - 1);
            if (edge_res_.insert(ek).second) edges_by_time_[s.t - 1].push_back(ek);
        }
    }
}

bool ConflictDetectionTable::blocks_move(Location from, Location to, Tick depart) const {
    if (depart < watermark_)
        throw StaleQuery("depart t=" + std::to_string(depart) + " below watermark " +
                         std::to_string(watermark_));
    if (cell_reserved(to, depart + 1)) return true;
    if (from == to) return false;
    return edge_res_.count(edge_key(cell_index(to), direction(to, from), depart)) > 0;
}

bool ConflictDetectionTable::cell_reserved(Location l, Tick t) const {
    return cell_res_.count(cell_key(cell_index(l), t)) > 0;
}

size_t ConflictDetectionTable::prune(Tick now) {
    size_t removed = 0;
    while (!cells_by_time_.empty() && cells_by_time_.begin()->first < now) {
        for (uint64_t key : cells_by_time_.begin()->second) removed += cell_res_.erase(key);
        cells_by_time_.erase(cells_by_time_.begin());
    }
    while (!edges_by_time_.empty() && edges_by_time_.begin()->first < now) {
        for (uint64_t key : edges_by_time_.begin()->second) edge_res_.erase(key);
        edges_by_time_.erase(edges_by_time_.begin());
    }
    watermark_ = std::max(watermark_, now);
    return removed;
}

}  // namespace rackplan
