#pragma once

#include <span>
#include <string>
#include <vector>

#include "rackplan/planners.hpp"
#include "rackplan/scenario.hpp"
#include "rackplan/world.hpp"

namespace rackplan {

struct RunOptions {
    bool prune = true;            // false reproduces an ever-growing reservation graph
    bool record_paths = false;    // keep executed on-grid segments in the report
    std::string tick_log_path;    // per-tick CSV when nonempty
    std::string trace_path;       // executed-step CSV when nonempty
};

struct SimReport {
    Tick makespan = 0;      // tick the last rack came home; 0 for empty runs
    Tick first_emerge = 0;
    double ppr = 0;         // mean picker processing fraction of the makespan
    double rwr = 0;         // mean robot non-idle fraction of the makespan
    double stc_ms = 0;      // selection phase wall time
    double ptc_ms = 0;      // path finding wall time
    size_t mc_proxy = 0;    // peak reservation entries + peak open-set size
    size_t peak_cdt_entries = 0;
    size_t peak_open_set = 0;
    long deliveries = 0;
    long waits = 0;
    long nopath_retries = 0;
    long items_processed = 0;
    long long processed_duration = 0;
    uint64_t event_hash = 0;
    std::vector<long> per_rack_deliveries;
    std::vector<Path> executed;  // on-grid segments, only with record_paths
};

// Mean of per-entity busy ticks over the makespan; 0 when the makespan is 0.
double processing_rate_mean(std::span<const Tick> per_entity_ticks, Tick makespan);

std::string report_to_json(const SimReport& r, bool include_timing = true);

// One full run: ticks until every item is processed and every rack is home.
// Identical (scenario, planner state, seed) inputs give identical reports up
// to the wall-clock fields. Throws LivelockError / InvariantViolation.
SimReport run_simulation(const Scenario& s, Planner& planner, uint64_t seed,
                         const RunOptions& opt = {});

// Replays the scenario `episodes` times with one planner instance so the
// learned table carries forward. `warm` seeds and receives the table.
std::vector<SimReport> run_episodes(const Scenario& s, PlannerKind kind, const HyperParams& hp,
                                    uint64_t seed, int episodes, const RunOptions& opt = {},
                                    QTable* warm = nullptr);

}  // namespace rackplan
