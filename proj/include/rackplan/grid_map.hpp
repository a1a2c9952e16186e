#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rackplan/geometry.hpp"

namespace rackplan {

enum class CellRole : uint8_t { Aisle, Storage, PickerStation };

// Static warehouse layout: cell roles plus the rack-home and picker-station
// bindings. Immutable after load and safe to share between runs.
struct GridMap {
    int height = 0;
    int width = 0;
    std::vector<CellRole> cells;            // row-major, cells[y * width + x]
    std::vector<Location> rack_homes;       // rack id -> home cell (Storage)
    std::vector<Location> picker_stations;  // picker id -> station cell
    std::vector<int> rack_picker;           // rack id -> picker id
    std::vector<int> home_rack;             // cell index -> rack id, -1 if none

    bool in_bounds(Location l) const {
        return l.x >= 0 && l.x < width && l.y >= 0 && l.y < height;
    }
    int cell_index(Location l) const { return l.y * width + l.x; }
    CellRole role(Location l) const { return cells[cell_index(l)]; }
    int rack_at(Location l) const { return home_rack[cell_index(l)]; }
    int rack_count() const { return int(rack_homes.size()); }
    int picker_count() const { return int(picker_stations.size()); }

    // A cell a robot may occupy at all: anything except unbound storage.
    bool ever_traversable(Location l) const {
        return in_bounds(l) && (role(l) != CellRole::Storage || rack_at(l) >= 0);
    }

    bool operator==(const GridMap&) const = default;
};

// Traversable 4-neighbors for transit: aisle and station cells. Rack homes
// are obstacles unless listed in allowed_homes (the leg's endpoints).
std::vector<Location> neighbors(const GridMap& g, Location l);
std::vector<Location> neighbors(const GridMap& g, Location l,
                                std::span<const Location> allowed_homes);

// Parses the text layout document (grammar in docs/layout_format.md).
// Throws SchemaError on malformed documents and LayoutError on grid
// invariant violations (bad bindings, disconnected aisle subgraph).
GridMap load_layout(const std::string& text);

// Canonical text form; load_layout(save_layout(g)) == g.
std::string save_layout(const GridMap& g);

}  // namespace rackplan
