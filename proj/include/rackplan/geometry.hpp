#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>

namespace rackplan {

using Tick = int64_t;

// Grid coordinates: x is the column (0..W-1), y is the row (0..H-1).
struct Location {
    int x = 0;
    int y = 0;

    bool operator==(const Location&) const = default;
    auto operator<=>(const Location&) const = default;
};

inline Tick manhattan(Location a, Location b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

inline bool adjacent_or_equal(Location a, Location b) {
    return manhattan(a, b) <= 1;
}

struct LocationHash {
    size_t operator()(Location l) const {
        return std::hash<uint64_t>()((uint64_t(uint32_t(l.x)) << 32) | uint32_t(l.y));
    }
};

}  // namespace rackplan
