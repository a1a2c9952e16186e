#include "rackplan/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rackplan/errors.hpp"
#include "rackplan/path_cache.hpp"
#include "rackplan/rng.hpp"

namespace rackplan {

void BadCaseParams::validate() const {
    if (k < 1) throw GeometryError("k must be >= 1");
    if (item_time < 1) throw GeometryError("item processing time must be >= 1");
    if (round_trip < 6 || round_trip % 2 != 0)
        throw GeometryError("round trip D must be an even duration >= 6 (one leg spans the "
                            "aisle detour)");
    if (inter_rack < 3) throw GeometryError("inter-rack travel M must be >= 3");
    if (round_trips_p2.empty()) throw GeometryError("at least one second-picker round trip needed");
    if (round_trips_p2.size() != 1 && int(round_trips_p2.size()) != k)
        throw GeometryError("give one shared D_j or exactly k of them");
    for (Tick d : round_trips_p2)
        if (d < 6 || d % 2 != 0) throw GeometryError("every D_j must be an even duration >= 6");
}

Tick naive_closed_form(int k, Tick D, Tick xi, Tick M, Tick sum_dv) {
    return Tick(k) * (D + xi) + M + sum_dv + Tick(k) * xi;
}

Tick batched_closed_form(int k, Tick D, Tick xi, Tick M, Tick sum_dv) {
    return D + Tick(k) * xi + 2 * M + sum_dv + Tick(k) * xi;
}

GridMap make_block_layout(int height, int width, int racks, int pickers) {
    if (height < 6 || width < 6) throw ConfigError("block layout needs at least 6x6");
    if (pickers < 1 || racks < 1) throw ConfigError("need at least one rack and one picker");
    if (pickers > width - 2) throw ConfigError("too many pickers for this width");

    std::ostringstream doc;
    doc << height << ' ' << width << '\n';
    std::vector<std::string> rows(height, std::string(width, '.'));

    rows[0].assign(width, 'S');  // wall row carrying the stations
    std::vector<Location> stations;
    for (int i = 0; i < pickers; ++i) {
        int x = 1 + (i * (width - 2)) / pickers;
        while (rows[0][x] == 'P') ++x;  // guard against rounding collisions
        rows[0][x] = 'P';
        stations.push_back({x, 0});
    }

    // two-row storage bands split by aisle rows; vertical corridors every
    // third column keep the aisle grid connected
    std::vector<Location> storage_cells;
    for (int y = 2; y < height - 1; ++y) {
        if ((y - 2) % 3 == 2) continue;
        for (int x = 0; x < width; ++x) {
            if (x % 3 == 0) continue;
            rows[y][x] = 'S';
            storage_cells.push_back({x, y});
        }
    }
    if (int(storage_cells.size()) < racks)
        throw ConfigError("layout too small: " + std::to_string(storage_cells.size()) +
                          " storage cells for " + std::to_string(racks) + " racks");

    for (int y = 0; y < height; ++y) doc << rows[y] << '\n';
    doc << "racks:\n";
    const size_t stride_num = storage_cells.size();
    for (int r = 0; r < racks; ++r) {
        Location h = storage_cells[(size_t(r) * stride_num) / racks];
        doc << r << ' ' << h.x << ' ' << h.y << ' ' << (r % pickers) << '\n';
    }
    doc << "pickers:\n";
    for (size_t p = 0; p < stations.size(); ++p)
        doc << p << ' ' << stations[p].x << ' ' << stations[p].y << '\n';
    return load_layout(doc.str());
}

Scenario generate_poisson(const GridMap& layout, double rate, int count, Tick dur_lo, Tick dur_hi,
                          int robots, uint64_t seed) {
    if (layout.rack_count() == 0) throw ConfigError("layout has no racks");
    if (rate <= 0) throw ConfigError("arrival rate must be positive");
    if (count < 1) throw ConfigError("need at least one item");
    if (dur_lo < 1 || dur_lo > dur_hi) throw ConfigError("need 1 <= dur_lo <= dur_hi");
    if (robots < 1) throw ConfigError("need at least one robot");

    std::vector<Location> aisle;
    for (int y = 0; y < layout.height; ++y)
        for (int x = 0; x < layout.width; ++x)
            if (layout.role({x, y}) == CellRole::Aisle) aisle.push_back({x, y});
    if (robots > int(aisle.size())) throw ConfigError("more robots than aisle cells");

    Scenario s;
    s.layout = layout;
    s.seed = seed;
    for (int i = 0; i < robots; ++i)
        s.robots.emplace_back(i, aisle[(size_t(i) * aisle.size()) / robots]);

    Rng rng(seed);
    Tick t = 0;
    long long total_dur = 0;
    for (int i = 0; i < count; ++i) {
        t += Tick(std::llround(rng.exponential(rate)));
        Item it;
        it.emerge = t;
        it.rack = int(rng.uniform_int(0, layout.rack_count() - 1));
        it.dur = rng.uniform_int(dur_lo, dur_hi);
        total_dur += it.dur;
        s.items.push_back(it);
    }
    s.poisson = PoissonMeta{rate, dur_lo, dur_hi};
    s.horizon_hint = t + total_dur / std::max(1, layout.picker_count()) + 4 * (layout.height + layout.width);
    return s;
}

Scenario generate_bad_case(const BadCaseParams& p) {
    p.validate();
    const int k = p.k;
    const Tick dj0 = p.round_trips_p2.front();

    // Three-row corridor: entity row 0, aisle row 1, overflow storage row 2.
    // Every off-aisle move costs one vertical hop, so a one-way leg between
    // entities at columns a and b realizes |a-b| + 2 ticks.
    const int x_p1_rack = int(p.round_trip / 2 - 2);
    const int x_v1 = x_p1_rack + int(p.inter_rack - 2);
    const int x_p2 = x_v1 + int(dj0 / 2 - 2);
    if (x_p2 <= x_v1) throw GeometryError("first burst rack would overlap its station");

    std::vector<Location> v_homes;
    v_homes.push_back({x_v1, 0});
    for (int j = 1; j < k; ++j) {
        const int slot = j - 1;
        v_homes.push_back({x_p2 + 1 + slot / 2, slot % 2 == 0 ? 0 : 2});
    }
    int width = x_p2 + 2;
    for (const Location& h : v_homes) width = std::max(width, h.x + 2);

    std::ostringstream doc;
    doc << 3 << ' ' << width << '\n';
    std::vector<std::string> rows(3);
    rows[0].assign(width, 'S');
    rows[1].assign(width, '.');
    rows[2].assign(width, 'S');
    rows[0][0] = 'P';
    rows[0][x_p2] = 'P';
    for (int y = 0; y < 3; ++y) doc << rows[y] << '\n';

    // burst racks get the low ids so rack-major tie-breaks favor them; the
    // lone first-picker rack comes last
    doc << "racks:\n";
    for (int j = 0; j < k; ++j) doc << j << ' ' << v_homes[j].x << ' ' << v_homes[j].y << " 1\n";
    doc << k << ' ' << x_p1_rack << ' ' << 0 << " 0\n";
    doc << "pickers:\n";
    doc << 0 << ' ' << 0 << ' ' << 0 << '\n';
    doc << 1 << ' ' << x_p2 << ' ' << 0 << '\n';

    Scenario s;
    s.layout = load_layout(doc.str());
    s.seed = 0;
    s.robots.emplace_back(0, Location{x_p1_rack, 0});

    BadCaseMeta meta;
    meta.nominal = p;
    meta.p1_rack = k;
    meta.p1_picker = 0;
    const Location p1_home{x_p1_rack, 0};
    const Location p1_station{0, 0};
    const Location p2_station{x_p2, 0};
    meta.achieved_D = 2 * static_distance(s.layout, p1_home, p1_station);
    meta.achieved_M = static_distance(s.layout, p1_home, v_homes[0]);
    Tick sum_dv = 0;
    for (int j = 0; j < k; ++j) {
        Tick trip = 2 * static_distance(s.layout, v_homes[j], p2_station);
        if (j > 0) trip += static_distance(s.layout, v_homes[j - 1], v_homes[j]);
        meta.achieved_dj.push_back(trip);
        sum_dv += trip;
    }
    meta.naive_form = naive_closed_form(k, meta.achieved_D, p.item_time, meta.achieved_M, sum_dv);
    meta.batched_form =
        batched_closed_form(k, meta.achieved_D, p.item_time, meta.achieved_M, sum_dv);

    // one item per burst rack in a quick volley starting just after the
    // first slow-rack item; slow-rack items arrive one full cycle apart
    for (int i = 0; i < k; ++i)
        s.items.push_back({Tick(i) * (meta.achieved_D + p.item_time), p.item_time, k});
    for (int j = 0; j < k; ++j) s.items.push_back({1 + 2 * Tick(j), p.item_time, j});
    std::stable_sort(s.items.begin(), s.items.end(),
                     [](const Item& a, const Item& b) { return a.emerge < b.emerge; });

    s.badcase = std::move(meta);
    s.horizon_hint = s.badcase->naive_form + 200;
    return s;
}

namespace {

nlohmann::ordered_json scenario_to_json(const Scenario& s) {
    nlohmann::ordered_json j;
    j["layout_ref"] = s.layout_ref;
    j["seed"] = s.seed;
    j["robots"] = nlohmann::ordered_json::array();
    for (const auto& [id, loc] : s.robots)
        j["robots"].push_back({{"id", id}, {"x", loc.x}, {"y", loc.y}});
    j["items"] = nlohmann::ordered_json::array();
    for (const Item& it : s.items)
        j["items"].push_back({{"t", it.emerge}, {"rack", it.rack}, {"dur", it.dur}});
    if (s.horizon_hint) j["horizon_hint"] = *s.horizon_hint;
    if (s.badcase) {
        const BadCaseMeta& m = *s.badcase;
        nlohmann::ordered_json b;
        b["k"] = m.nominal.k;
        b["round_trip"] = m.nominal.round_trip;
        b["item_time"] = m.nominal.item_time;
        b["inter_rack"] = m.nominal.inter_rack;
        b["round_trips_p2"] = m.nominal.round_trips_p2;
        b["achieved_D"] = m.achieved_D;
        b["achieved_M"] = m.achieved_M;
        b["achieved_dj"] = m.achieved_dj;
        b["p1_rack"] = m.p1_rack;
        b["p1_picker"] = m.p1_picker;
        b["naive_form"] = m.naive_form;
        b["batched_form"] = m.batched_form;
        j["badcase"] = b;
    }
    if (s.poisson) {
        j["poisson"] = {{"rate", s.poisson->rate},
                        {"dur_lo", s.poisson->dur_lo},
                        {"dur_hi", s.poisson->dur_hi}};
    }
    return j;
}

Scenario scenario_from_json(const nlohmann::json& j, GridMap layout) {
    Scenario s;
    s.layout = std::move(layout);
    try {
        s.layout_ref = j.value("layout_ref", std::string());
        s.seed = j.at("seed").get<uint64_t>();
        for (const auto& r : j.at("robots")) {
            int id = r.at("id").get<int>();
            Location loc{r.at("x").get<int>(), r.at("y").get<int>()};
            s.robots.emplace_back(id, loc);
        }
        for (const auto& it : j.at("items")) {
            Item item;
            item.emerge = it.at("t").get<Tick>();
            item.rack = it.at("rack").get<int>();
            item.dur = it.at("dur").get<Tick>();
            s.items.push_back(item);
        }
        if (j.contains("horizon_hint")) s.horizon_hint = j["horizon_hint"].get<Tick>();
        if (j.contains("badcase")) {
            const auto& b = j["badcase"];
            BadCaseMeta m;
            m.nominal.k = b.at("k").get<int>();
            m.nominal.round_trip = b.at("round_trip").get<Tick>();
            m.nominal.item_time = b.at("item_time").get<Tick>();
            m.nominal.inter_rack = b.at("inter_rack").get<Tick>();
            m.nominal.round_trips_p2 = b.at("round_trips_p2").get<std::vector<Tick>>();
            m.achieved_D = b.at("achieved_D").get<Tick>();
            m.achieved_M = b.at("achieved_M").get<Tick>();
            m.achieved_dj = b.at("achieved_dj").get<std::vector<Tick>>();
            m.p1_rack = b.at("p1_rack").get<int>();
            m.p1_picker = b.at("p1_picker").get<int>();
            m.naive_form = b.at("naive_form").get<Tick>();
            m.batched_form = b.at("batched_form").get<Tick>();
            s.badcase = std::move(m);
        }
        if (j.contains("poisson")) {
            const auto& p = j["poisson"];
            s.poisson = PoissonMeta{p.at("rate").get<double>(), p.at("dur_lo").get<Tick>(),
                                    p.at("dur_hi").get<Tick>()};
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("scenario: ") + e.what());
    }

    // validation against the layout
    std::vector<uint8_t> robot_seen(s.robots.size(), 0);
    std::vector<uint8_t> cell_used(size_t(s.layout.height) * s.layout.width, 0);
    for (const auto& [id, loc] : s.robots) {
        if (id < 0 || size_t(id) >= s.robots.size() || robot_seen[id])
            throw SchemaError("robot ids must be dense and unique");
        robot_seen[id] = 1;
        if (!s.layout.in_bounds(loc) || !s.layout.ever_traversable(loc) ||
            s.layout.role(loc) == CellRole::PickerStation)
            throw SchemaError("robot " + std::to_string(id) + " starts on an invalid cell");
        if (cell_used[s.layout.cell_index(loc)]) throw SchemaError("two robots share a start cell");
        cell_used[s.layout.cell_index(loc)] = 1;
    }
    for (const Item& it : s.items) {
        if (it.rack < 0 || it.rack >= s.layout.rack_count())
            throw SchemaError("item references unknown rack " + std::to_string(it.rack));
        if (it.dur < 1) throw SchemaError("item processing time must be positive");
        if (it.emerge < 0) throw SchemaError("item emerge time must be >= 0");
    }
    if (!std::is_sorted(s.items.begin(), s.items.end(),
                        [](const Item& a, const Item& b) { return a.emerge < b.emerge; })) {
        std::cerr << "warning: scenario items out of order by emerge time; re-sorting\n";
        std::stable_sort(s.items.begin(), s.items.end(),
                         [](const Item& a, const Item& b) { return a.emerge < b.emerge; });
    }
    return s;
}

}  // namespace

std::string save_scenario(const Scenario& s) { return scenario_to_json(s).dump(2); }

Scenario load_scenario(const std::string& json_text, const std::string& layout_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("scenario: ") + e.what());
    }
    return scenario_from_json(j, load_layout(layout_text));
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open scenario file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("scenario: ") + e.what());
    }
    std::string ref = j.value("layout_ref", std::string());
    if (ref.empty()) throw SchemaError("scenario file needs a layout_ref");
    std::filesystem::path lp = std::filesystem::path(path).parent_path() / ref;
    std::ifstream lin(lp);
    if (!lin) throw SchemaError("cannot open layout file: " + lp.string());
    std::stringstream lbuf;
    lbuf << lin.rdbuf();
    return scenario_from_json(j, load_layout(lbuf.str()));
}

bool scenario_equal(const Scenario& a, const Scenario& b) {
    return a.layout == b.layout && save_scenario(a) == save_scenario(b);
}

}  // namespace rackplan
