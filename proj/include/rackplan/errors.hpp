#pragma once

#include <stdexcept>
#include <string>

namespace rackplan {

// Malformed input document (layout/scenario/q-table files).
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& msg) : std::runtime_error("schema error: " + msg) {}
};

// Structurally valid layout that violates a grid invariant.
struct LayoutError : std::runtime_error {
    explicit LayoutError(const std::string& msg) : std::runtime_error("layout error: " + msg) {}
};

// Invalid generator or planner configuration.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error("config error: " + msg) {}
};

// Requested adversarial-instance durations cannot be placed on a grid.
struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& msg) : std::runtime_error("geometry error: " + msg) {}
};

// A (cell, tick) was reserved twice; planners must pre-check moves.
struct ReservationClash : std::logic_error {
    explicit ReservationClash(const std::string& msg) : std::logic_error("reservation clash: " + msg) {}
};

// Conflict query below the table's low watermark.
struct StaleQuery : std::logic_error {
    explicit StaleQuery(const std::string& msg) : std::logic_error("stale query: " + msg) {}
};

// Simulation made no progress for far longer than the workload warrants.
struct LivelockError : std::runtime_error {
    explicit LivelockError(const std::string& msg) : std::runtime_error("livelock: " + msg) {}
};

// A hard world invariant broke (e.g. two robots on one cell).
struct InvariantViolation : std::logic_error {
    explicit InvariantViolation(const std::string& msg) : std::logic_error("invariant violation: " + msg) {}
};

}  // namespace rackplan
