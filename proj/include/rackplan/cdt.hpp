#pragma once

#include <cstdint>
#include <map>
#include <unordered_set>
#include <vector>

#include "rackplan/geometry.hpp"
#include "rackplan/path.hpp"

namespace rackplan {

// Conflict detection table: per-cell reserved ticks plus directed edge
// reservations so swap (inter-grid) conflicts stay detectable. Retained
// entries are bounded by the footprint of live paths once pruned; the
// temporal dimension never accumulates.
class ConflictDetectionTable {
public:
    ConflictDetectionTable(int height, int width) : height_(height), width_(width),
        last_reserved_(size_t(height) * width, -1) {}

    // Records every cell tick of p plus an edge entry per actual move.
    // skip_front/drop_back trim steps already reserved by an adjoining leg
    // or executed off-grid. Throws ReservationClash on a duplicate cell tick.
    void insert(const Path& p, size_t skip_front = 0, size_t drop_back = 0);

    // True iff moving from->to departing at `depart` conflicts with a
    // reservation: the target cell is taken on arrival (single-grid) or the
    // reverse edge is reserved for the same tick pair (inter-grid).
    // Throws StaleQuery below the low watermark.
    bool blocks_move(Location from, Location to, Tick depart) const;

    bool cell_reserved(Location l, Tick t) const;

    // Latest tick ever reserved at l, -1 if none. Monotone; pruning does not
    // lower it (only future ticks matter to callers).
    Tick last_reserved_at(Location l) const { return last_reserved_[cell_index(l)]; }

    // Drops all reservations with tick < now and advances the watermark.
    // Returns the number of cell entries removed.
    size_t prune(Tick now);

    Tick low_watermark() const { return watermark_; }
    Tick max_reserved_time() const { return max_time_; }
    size_t cell_entry_count() const { return cell_res_.size(); }
    size_t edge_entry_count() const { return edge_res_.size(); }
    size_t entry_count() const { return cell_res_.size() + edge_res_.size(); }

private:
    int cell_index(Location l) const { return l.y * width_ + l.x; }
    static uint64_t cell_key(int cell, Tick t) { return (uint64_t(cell) << 40) | uint64_t(t); }
    static uint64_t edge_key(int from, int dir, Tick t) {
        return (uint64_t(from) << 40) | (uint64_t(dir) << 37) | uint64_t(t);
    }
    int direction(Location from, Location to) const;

    int height_;
    int width_;
    std::unordered_set<uint64_t> cell_res_;
    std::unordered_set<uint64_t> edge_res_;
    std::map<Tick, std::vector<uint64_t>> cells_by_time_;
    std::map<Tick, std::vector<uint64_t>> edges_by_time_;
    std::vector<Tick> last_reserved_;
    Tick watermark_ = 0;
    Tick max_time_ = -1;
};

}  // namespace rackplan
