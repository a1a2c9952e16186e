#pragma once

#include <vector>

#include "rackplan/cdt.hpp"
#include "rackplan/entities.hpp"
#include "rackplan/grid_map.hpp"
#include "rackplan/rl.hpp"
#include "rackplan/scenario.hpp"

namespace rackplan {

// Mutable simulation state. Owned and advanced single-threaded by the
// engine; planners read it during the selection phase.
struct World {
    const GridMap* grid = nullptr;
    Tick clock = 0;
    std::vector<Rack> racks;
    std::vector<Picker> pickers;
    std::vector<Robot> robots;
    ConflictDetectionTable cdt;
    std::vector<uint8_t> parked;  // cell -> 1 while an idle robot stands there
    const std::vector<Item>* items = nullptr;
    size_t next_arrival = 0;

    World(const GridMap& g, const Scenario& s);

    // f_p over live state: remaining current item plus pending work of every
    // rack queued at the picker.
    Tick picker_finish(int picker) const;

    // MDP coordinates of a rack: its picker's accumulated processing ticks
    // and its own.
    RackState rack_state(int rack) const {
        return {pickers[racks[rack].picker].processed_ticks, racks[rack].accum_processing};
    }

    // Emerge time of the oldest pending item; pending stays emergence-sorted.
    Tick oldest_pending(int rack) const { return (*items)[racks[rack].pending.front()].emerge; }

    std::vector<int> idle_robots() const;
    bool any_selectable() const;
};

}  // namespace rackplan
