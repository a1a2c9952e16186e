#include "rackplan/grid_map.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "rackplan/errors.hpp"

namespace rackplan {

namespace {

constexpr int kDx[4] = {0, 0, -1, 1};
constexpr int kDy[4] = {-1, 1, 0, 0};

bool transit_ok(const GridMap& g, Location n, std::span<const Location> allowed_homes) {
    if (!g.in_bounds(n)) return false;
    CellRole r = g.role(n);
    if (r != CellRole::Storage) return true;
    return std::find(allowed_homes.begin(), allowed_homes.end(), n) != allowed_homes.end();
}

// Flood fill over the aisle subgraph: non-storage cells plus rack homes,
// where homes are endpoints only and never expanded through.
void check_connected(const GridMap& g) {
    const int n = g.height * g.width;
    std::vector<uint8_t> member(n, 0);  // 1 = aisle/station, 2 = rack home
    for (int i = 0; i < n; ++i)
        if (g.cells[i] != CellRole::Storage) member[i] = 1;
    for (Location h : g.rack_homes) member[g.cell_index(h)] = 2;

    int start = -1, total = 0;
    for (int i = 0; i < n; ++i)
        if (member[i]) {
            ++total;
            if (start < 0) start = i;
        }
    if (total == 0) return;

    std::vector<uint8_t> seen(n, 0);
    std::queue<int> q;
    seen[start] = 1;
    q.push(start);
    int reached = 1;
    while (!q.empty()) {
        int c = q.front();
        q.pop();
        if (member[c] == 2 && c != start) continue;  // homes do not carry transit
        Location l{c % g.width, c / g.width};
        for (int d = 0; d < 4; ++d) {
            Location m{l.x + kDx[d], l.y + kDy[d]};
            if (!g.in_bounds(m)) continue;
            int mi = g.cell_index(m);
            if (!member[mi] || seen[mi]) continue;
            seen[mi] = 1;
            ++reached;
            q.push(mi);
        }
    }
    if (reached != total)
        throw LayoutError("aisle subgraph is disconnected (" + std::to_string(reached) + " of " +
                          std::to_string(total) + " cells reachable)");
}

}  // namespace

std::vector<Location> neighbors(const GridMap& g, Location l) {
    return neighbors(g, l, {});
}

std::vector<Location> neighbors(const GridMap& g, Location l,
                                std::span<const Location> allowed_homes) {
    std::vector<Location> out;
    out.reserve(4);
    for (int d = 0; d < 4; ++d) {
        Location n{l.x + kDx[d], l.y + kDy[d]};
        if (transit_ok(g, n, allowed_homes)) out.push_back(n);
    }
    return out;
}

GridMap load_layout(const std::string& text) {
    std::istringstream in(text);
    GridMap g;
    std::string line;

    if (!std::getline(in, line)) throw SchemaError("empty layout document");
    {
        std::istringstream header(line);
        if (!(header >> g.height >> g.width) || g.height <= 0 || g.width <= 0)
            throw SchemaError("first line must be 'H W' with positive dimensions");
        std::string rest;
        if (header >> rest) throw SchemaError("trailing tokens after 'H W'");
    }

    g.cells.resize(size_t(g.height) * g.width);
    for (int y = 0; y < g.height; ++y) {
        if (!std::getline(in, line)) throw SchemaError("expected " + std::to_string(g.height) + " grid rows");
        if (int(line.size()) != g.width)
            throw SchemaError("row " + std::to_string(y) + " has " + std::to_string(line.size()) +
                              " cells, expected " + std::to_string(g.width));
        for (int x = 0; x < g.width; ++x) {
            switch (line[x]) {
                case '.': g.cells[g.cell_index({x, y})] = CellRole::Aisle; break;
                case 'S': g.cells[g.cell_index({x, y})] = CellRole::Storage; break;
                case 'P': g.cells[g.cell_index({x, y})] = CellRole::PickerStation; break;
                default:
                    throw SchemaError(std::string("unknown cell character '") + line[x] + "'");
            }
        }
    }

    struct RackSpec { Location home; int picker; };
    std::vector<RackSpec> racks;
    std::vector<Location> pickers;
    std::vector<uint8_t> rack_seen, picker_seen;

    std::string section;
    while (std::getline(in, line)) {
        // strip trailing carriage returns and skip blanks
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        if (line == "racks:" || line == "pickers:") {
            section = line;
            continue;
        }
        std::istringstream row(line);
        if (section == "racks:") {
            int id, x, y, picker;
            if (!(row >> id >> x >> y >> picker)) throw SchemaError("bad rack row: '" + line + "'");
            if (id < 0) throw SchemaError("negative rack id");
            if (size_t(id) >= racks.size()) {
                racks.resize(id + 1);
                rack_seen.resize(id + 1, 0);
            }
            if (rack_seen[id]) throw SchemaError("duplicate rack id " + std::to_string(id));
            rack_seen[id] = 1;
            racks[id] = {{x, y}, picker};
        } else if (section == "pickers:") {
            int id, x, y;
            if (!(row >> id >> x >> y)) throw SchemaError("bad picker row: '" + line + "'");
            if (id < 0) throw SchemaError("negative picker id");
            if (size_t(id) >= pickers.size()) {
                pickers.resize(id + 1);
                picker_seen.resize(id + 1, 0);
            }
            if (picker_seen[id]) throw SchemaError("duplicate picker id " + std::to_string(id));
            picker_seen[id] = 1;
            pickers[id] = {x, y};
        } else {
            throw SchemaError("row outside racks:/pickers: section: '" + line + "'");
        }
    }
    for (size_t i = 0; i < rack_seen.size(); ++i)
        if (!rack_seen[i]) throw SchemaError("rack ids are not dense: missing " + std::to_string(i));
    for (size_t i = 0; i < picker_seen.size(); ++i)
        if (!picker_seen[i]) throw SchemaError("picker ids are not dense: missing " + std::to_string(i));

    for (size_t i = 0; i < pickers.size(); ++i) {
        Location s = pickers[i];
        if (!g.in_bounds(s)) throw LayoutError("picker " + std::to_string(i) + " station out of bounds");
        if (g.role(s) != CellRole::PickerStation)
            throw LayoutError("picker " + std::to_string(i) + " station is not a 'P' cell");
        g.picker_stations.push_back(s);
    }
    g.home_rack.assign(size_t(g.height) * g.width, -1);
    for (size_t i = 0; i < racks.size(); ++i) {
        Location h = racks[i].home;
        if (!g.in_bounds(h)) throw LayoutError("rack " + std::to_string(i) + " home out of bounds");
        if (g.role(h) != CellRole::Storage)
            throw LayoutError("rack " + std::to_string(i) + " home is not a storage cell");
        if (g.home_rack[g.cell_index(h)] >= 0)
            throw LayoutError("two racks share home cell (" + std::to_string(h.x) + "," +
                              std::to_string(h.y) + ")");
        if (racks[i].picker < 0 || size_t(racks[i].picker) >= pickers.size())
            throw SchemaError("rack " + std::to_string(i) + " references unknown picker " +
                              std::to_string(racks[i].picker));
        g.home_rack[g.cell_index(h)] = int(i);
        g.rack_homes.push_back(h);
        g.rack_picker.push_back(racks[i].picker);
    }

    // every station must be bound to exactly one picker
    std::vector<uint8_t> station_bound(size_t(g.height) * g.width, 0);
    for (Location s : g.picker_stations) {
        if (station_bound[g.cell_index(s)])
            throw LayoutError("two pickers share one station cell");
        station_bound[g.cell_index(s)] = 1;
    }
    for (int i = 0; i < g.height * g.width; ++i)
        if (g.cells[i] == CellRole::PickerStation && !station_bound[i])
            throw LayoutError("'P' cell without a picker binding at index " + std::to_string(i));

    check_connected(g);
    return g;
}

std::string save_layout(const GridMap& g) {
    std::ostringstream out;
    out << g.height << ' ' << g.width << '\n';
    for (int y = 0; y < g.height; ++y) {
        for (int x = 0; x < g.width; ++x) {
            switch (g.role({x, y})) {
                case CellRole::Aisle: out << '.'; break;
                case CellRole::Storage: out << 'S'; break;
                case CellRole::PickerStation: out << 'P'; break;
            }
        }
        out << '\n';
    }
    out << "racks:\n";
    for (size_t i = 0; i < g.rack_homes.size(); ++i)
        out << i << ' ' << g.rack_homes[i].x << ' ' << g.rack_homes[i].y << ' ' << g.rack_picker[i]
            << '\n';
    out << "pickers:\n";
    for (size_t i = 0; i < g.picker_stations.size(); ++i)
        out << i << ' ' << g.picker_stations[i].x << ' ' << g.picker_stations[i].y << '\n';
    return out.str();
}

}  // namespace rackplan
