#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rackplan/entities.hpp"
#include "rackplan/geometry.hpp"
#include "rackplan/grid_map.hpp"

namespace rackplan {

// Parameters of the adversarial two-picker workload: one rack feeding the
// first picker with k items spaced one full fulfillment cycle apart, and k
// single-item racks for the second picker arriving in a quick burst.
struct BadCaseParams {
    int k = 1;
    Tick round_trip = 10;        // D: delivery + return for the first picker's rack
    Tick item_time = 2;          // xi: per-item processing time
    Tick inter_rack = 5;         // M: travel from the first rack to the burst cluster
    std::vector<Tick> round_trips_p2;  // D_j per second-picker rack (nominal targets)

    void validate() const;  // throws GeometryError
};

// Closed-form makespans of the two schedules on that workload.
Tick naive_closed_form(int k, Tick D, Tick xi, Tick M, Tick sum_dv);
Tick batched_closed_form(int k, Tick D, Tick xi, Tick M, Tick sum_dv);

struct BadCaseMeta {
    BadCaseParams nominal;
    Tick achieved_D = 0;
    Tick achieved_M = 0;
    std::vector<Tick> achieved_dj;   // realized grid round trips, visit order
    int p1_rack = -1;                // rack id feeding the first picker
    int p1_picker = 0;
    Tick naive_form = 0;             // closed forms on achieved values
    Tick batched_form = 0;
};

struct PoissonMeta {
    double rate = 0;
    Tick dur_lo = 0;
    Tick dur_hi = 0;
};

struct Scenario {
    GridMap layout;
    std::string layout_ref;  // as written in the scenario file; may be empty
    uint64_t seed = 0;
    std::vector<std::pair<int, Location>> robots;  // (robot id, start cell)
    std::vector<Item> items;                       // sorted by emerge time
    std::optional<Tick> horizon_hint;
    std::optional<BadCaseMeta> badcase;
    std::optional<PoissonMeta> poisson;
};

// Kiva-style block layout: stations along the top, a full aisle row below,
// then two-row storage bands split by aisle rows and columns.
GridMap make_block_layout(int height, int width, int racks, int pickers);

// Poisson item stream: exponential inter-arrival gaps rounded to ticks,
// uniform rack choice, uniform integer durations in [dur_lo, dur_hi].
// Deterministic for a fixed seed.
Scenario generate_poisson(const GridMap& layout, double rate, int count, Tick dur_lo, Tick dur_hi,
                          int robots, uint64_t seed);

// Realizes the adversarial workload on a three-row corridor. Achieved grid
// distances are recorded in the metadata; closed forms use achieved values.
Scenario generate_bad_case(const BadCaseParams& p);

std::string save_scenario(const Scenario& s);
Scenario load_scenario(const std::string& json_text, const std::string& layout_text);
Scenario load_scenario_file(const std::string& path);

bool scenario_equal(const Scenario& a, const Scenario& b);

}  // namespace rackplan
