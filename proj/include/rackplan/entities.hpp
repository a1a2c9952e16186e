#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "rackplan/geometry.hpp"
#include "rackplan/path.hpp"

namespace rackplan {

struct Item {
    Tick emerge = 0;
    Tick dur = 0;
    int rack = -1;
    bool operator==(const Item&) const = default;
};

enum class RackPos : uint8_t { AtHome, Carried, AtPicker };

enum class RobotState : uint8_t { Idle, PickingUp, Delivering, Queuing, AtProcessing, Returning };

struct Rack {
    int id = -1;
    Location home;
    int picker = -1;
    RackPos pos = RackPos::AtHome;
    int assigned_robot = -1;     // robot en route with or carrying this rack
    std::vector<int> pending;    // item indices emerged, not yet begun processing
    Tick pending_sum = 0;        // total duration of pending
    std::vector<int> batch;      // items locked for the current picker visit
    bool batch_locked = false;
    Tick queue_ready = -1;       // tick the rack became processable at its picker
    Tick accum_processing = 0;   // ar: ticks this rack has been processed
    long deliveries = 0;

    bool selectable() const {
        return pos == RackPos::AtHome && assigned_robot < 0 && !pending.empty();
    }
};

struct Picker {
    int id = -1;
    Location station;
    std::deque<int> queue;       // rack ids in arrival order
    Tick remaining_current = 0;  // e_p
    int current_item = -1;
    Tick processed_ticks = 0;    // ap for this picker's racks; PPR numerator
};

struct Robot {
    int id = -1;
    Location loc;                // position at the upcoming tick boundary
    RobotState state = RobotState::Idle;
    int carried_rack = -1;
    int target_rack = -1;
    std::vector<PathStep> itinerary;  // on-grid steps of the current trip
    size_t it_next = 0;               // index of the next step to execute
    Tick pickup_end = -1;             // arrival tick at the rack home, -1 for returns
    Tick working_ticks = 0;
};

}  // namespace rackplan
