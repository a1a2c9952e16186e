#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rackplan/geometry.hpp"

namespace rackplan {

enum class LegPurpose : uint8_t { Pickup, Delivery, Return };

struct PathStep {
    Tick t = 0;
    Location loc;
    bool operator==(const PathStep&) const = default;
};

// A timestamped grid trajectory. Steps advance by exactly one tick and move
// to a 4-adjacent cell or wait in place.
struct Path {
    std::vector<PathStep> steps;
    int robot_id = -1;
    LegPurpose purpose = LegPurpose::Pickup;

    bool empty() const { return steps.empty(); }
    Tick start_time() const { return steps.front().t; }
    Tick end_time() const { return steps.back().t; }
    Location start() const { return steps.front().loc; }
    Location goal() const { return steps.back().loc; }

    // Location at tick t; t must lie within [start_time, end_time].
    Location at(Tick t) const { return steps[size_t(t - start_time())].loc; }

    bool valid() const;
};

enum class ConflictKind : uint8_t { SingleGrid, InterGrid };

struct Conflict {
    ConflictKind kind;
    Tick time;    // tick of the shared cell, or departure tick of the swap
    Location a;   // cell occupied by the first path at `time`
    Location b;   // cell occupied by the second path at `time`
};

// Earliest conflict between two paths, or nullopt. Single-grid: same cell at
// the same tick. Inter-grid: the two paths swap adjacent cells across one
// tick pair.
std::optional<Conflict> detect_conflict(const Path& p, const Path& q);

}  // namespace rackplan
