#include "rackplan/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <fstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "rackplan/errors.hpp"

namespace rackplan {

World::World(const GridMap& g, const Scenario& s)
    : grid(&g), cdt(g.height, g.width), parked(size_t(g.height) * g.width, 0), items(&s.items) {
    racks.resize(g.rack_count());
    for (int i = 0; i < g.rack_count(); ++i) {
        racks[i].id = i;
        racks[i].home = g.rack_homes[i];
        racks[i].picker = g.rack_picker[i];
    }
    pickers.resize(g.picker_count());
    for (int i = 0; i < g.picker_count(); ++i) {
        pickers[i].id = i;
        pickers[i].station = g.picker_stations[i];
    }
    robots.resize(s.robots.size());
    for (const auto& [id, loc] : s.robots) {
        robots[id].id = id;
        robots[id].loc = loc;
        parked[g.cell_index(loc)] = 1;
    }
}

Tick World::picker_finish(int picker) const {
    Tick f = pickers[picker].remaining_current;
    for (int r : pickers[picker].queue) f += racks[r].pending_sum;
    return f;
}

std::vector<int> World::idle_robots() const {
    std::vector<int> out;
    for (const Robot& r : robots)
        if (r.state == RobotState::Idle) out.push_back(r.id);
    return out;
}

bool World::any_selectable() const {
    for (const Rack& r : racks)
        if (r.selectable()) return true;
    return false;
}

double processing_rate_mean(std::span<const Tick> per_entity_ticks, Tick makespan) {
    if (makespan <= 0 || per_entity_ticks.empty()) return 0.0;
    double sum = 0;
    for (Tick t : per_entity_ticks) sum += double(t) / double(makespan);
    return sum / double(per_entity_ticks.size());
}

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

class Engine {
public:
    Engine(const Scenario& s, Planner& planner, uint64_t seed, const RunOptions& opt)
        : w_(s.layout, s), planner_(planner), rng_(seed), opt_(opt) {
        long long work = 0;
        for (const Item& it : s.items) {
            const Location home = s.layout.rack_homes[it.rack];
            const Location station = s.layout.picker_stations[s.layout.rack_picker[it.rack]];
            work += it.dur + 2 * manhattan(home, station);
        }
        budget_ = 10 * (work + s.layout.height + s.layout.width) + 200;
        segments_.resize(w_.robots.size());
        if (!opt_.tick_log_path.empty()) {
            tick_log_.open(opt_.tick_log_path);
            tick_log_ << "t,busy_pickers,busy_robots,pending_items\n";
        }
        if (!opt_.trace_path.empty()) {
            trace_.open(opt_.trace_path);
            trace_ << "robot,t,x,y\n";
        }
    }

    SimReport run() {
        while (!done()) tick();
        return report();
    }

private:
    bool done() const {
        if (w_.next_arrival < w_.items->size()) return false;
        for (const Rack& r : w_.racks)
            if (r.pos != RackPos::AtHome || !r.pending.empty()) return false;
        for (const Robot& a : w_.robots)
            if (a.state != RobotState::Idle) return false;
        return true;
    }

    void tick() {
        busy_pickers_now_ = 0;
        busy_robots_now_ = 0;
        inject_arrivals();
        plan_phase();
        advance_robots();
        picker_phase();
        returns_phase();
        if (opt_.prune) w_.cdt.prune(w_.clock);
        note_cdt_peak();
        check_no_overlap();
        if (tick_log_.is_open())
            tick_log_ << w_.clock << ',' << busy_pickers_now_ << ',' << busy_robots_now_ << ','
                      << (injected_ - items_done_) << '\n';
        if (w_.clock - last_progress_ > budget_)
            throw LivelockError("no progress since t=" + std::to_string(last_progress_) +
                                " (now t=" + std::to_string(w_.clock) + ")");
        ++w_.clock;
    }

    void inject_arrivals() {
        const std::vector<Item>& items = *w_.items;
        while (w_.next_arrival < items.size() && items[w_.next_arrival].emerge <= w_.clock) {
            const int idx = int(w_.next_arrival);
            const Item& it = items[idx];
            Rack& rack = w_.racks[it.rack];
            rack.pending.push_back(idx);
            rack.pending_sum += it.dur;
            if (!any_item_) {
                any_item_ = true;
                first_emerge_ = it.emerge;
            }
            ++injected_;
            ++w_.next_arrival;
            hash_event('A', idx, it.rack);
            progress();
        }
    }

    void plan_phase() {
        std::vector<int> idle = w_.idle_robots();
        if (idle.empty() || !w_.any_selectable()) return;

        auto t0 = std::chrono::steady_clock::now();
        std::vector<int> selection = planner_.select(w_, idle, rng_);
        stc_ms_ += ms_since(t0);

        t0 = std::chrono::steady_clock::now();
        std::vector<int> avail = idle;  // id-ascending, so distance ties pick lower ids
        for (int rack : selection) {
            if (avail.empty()) break;
            if (!w_.racks[rack].selectable()) continue;
            size_t best = 0;
            Tick best_d = LLONG_MAX;
            for (size_t i = 0; i < avail.size(); ++i) {
                Tick d = manhattan(w_.robots[avail[i]].loc, w_.racks[rack].home);
                if (d < best_d) {
                    best_d = d;
                    best = i;
                }
            }
            const int robot = avail[best];
            if (commit_assignment(rack, robot)) {
                avail.erase(avail.begin() + best);
            } else {
                ++nopath_;
            }
        }
        ptc_ms_ += ms_since(t0);
    }

    bool commit_assignment(int rack_id, int robot_id) {
        Rack& rack = w_.racks[rack_id];
        Robot& rob = w_.robots[robot_id];
        const Location src = rob.loc;
        const Location home = rack.home;
        const Location station = w_.pickers[rack.picker].station;

        SearchStats st;
        auto pickup = planner_.find_path(w_, {src, home, w_.clock, false}, &st);
        note_search(st);
        if (!pickup) return false;
        SearchStats st2;
        auto delivery = planner_.find_path(w_, {home, station, pickup->end_time(), false}, &st2);
        note_search(st2);
        if (!delivery) return false;

        pickup->robot_id = robot_id;
        pickup->purpose = LegPurpose::Pickup;
        delivery->robot_id = robot_id;
        delivery->purpose = LegPurpose::Delivery;
        w_.cdt.insert(*pickup);
        // first step duplicates the pickup arrival; last step is the
        // off-grid buffer entry and is never occupied on the grid
        w_.cdt.insert(*delivery, 1, 1);
        note_cdt_peak();

        rob.itinerary = pickup->steps;
        if (delivery->steps.size() > 2)
            rob.itinerary.insert(rob.itinerary.end(), delivery->steps.begin() + 1,
                                 delivery->steps.end() - 1);
        rob.it_next = 1;
        rob.pickup_end = pickup->end_time();
        rob.target_rack = rack_id;
        rob.state = RobotState::PickingUp;
        if (rob.pickup_end == w_.clock) {  // already under the rack
            rob.carried_rack = rack_id;
            rack.pos = RackPos::Carried;
            rob.state = RobotState::Delivering;
        }
        rack.assigned_robot = robot_id;
        w_.parked[w_.grid->cell_index(src)] = 0;
        begin_segment(rob, {w_.clock, src});
        hash_event('S', rack_id, robot_id);
        return true;
    }

    void advance_robots() {
        for (Robot& rob : w_.robots) {
            if (rob.state == RobotState::Idle) continue;
            ++rob.working_ticks;
            ++busy_robots_now_;
            if (rob.state == RobotState::Queuing || rob.state == RobotState::AtProcessing)
                continue;
            if (rob.it_next < rob.itinerary.size() &&
                rob.itinerary[rob.it_next].t == w_.clock + 1) {
                const PathStep s = rob.itinerary[rob.it_next++];
                if (s.loc == rob.loc) ++waits_;
                rob.loc = s.loc;
                record_step(rob, s);
                if (rob.state == RobotState::PickingUp && w_.clock + 1 >= rob.pickup_end) {
                    rob.carried_rack = rob.target_rack;
                    w_.racks[rob.target_rack].pos = RackPos::Carried;
                    rob.state = RobotState::Delivering;
                }
                if (rob.it_next == rob.itinerary.size() && rob.state == RobotState::Returning)
                    finish_return(rob);
            } else if (rob.state == RobotState::Delivering) {
                enter_buffer(rob);
            } else {
                throw InvariantViolation("robot " + std::to_string(rob.id) +
                                         " has no move for t=" + std::to_string(w_.clock + 1));
            }
        }
    }

    void enter_buffer(Robot& rob) {
        const int rack_id = rob.carried_rack;
        Rack& rack = w_.racks[rack_id];
        rob.itinerary.clear();
        rob.it_next = 0;
        rob.state = RobotState::Queuing;
        close_segment(rob);
        rack.pos = RackPos::AtPicker;
        rack.queue_ready = w_.clock + 1;
        ++rack.deliveries;
        ++deliveries_;
        w_.pickers[rack.picker].queue.push_back(rack_id);
        hash_event('D', rack_id, w_.clock + 1);
        progress();
    }

    void picker_phase() {
        for (Picker& p : w_.pickers) {
            if (p.remaining_current == 0) {
                if (p.queue.empty()) continue;
                Rack& rack = w_.racks[p.queue.front()];
                if (rack.queue_ready > w_.clock) continue;
                if (!rack.batch_locked) {
                    rack.batch = rack.pending;  // items arriving later wait a cycle
                    rack.batch_locked = true;
                }
                if (rack.batch.empty()) {
                    complete_rack(p, rack);
                    continue;
                }
                const int item = rack.batch.front();
                rack.batch.erase(rack.batch.begin());
                rack.pending.erase(rack.pending.begin());
                rack.pending_sum -= (*w_.items)[item].dur;
                p.current_item = item;
                p.remaining_current = (*w_.items)[item].dur;
                if (rack.assigned_robot >= 0)
                    w_.robots[rack.assigned_robot].state = RobotState::AtProcessing;
            }
            if (p.remaining_current > 0) {
                --p.remaining_current;
                ++p.processed_ticks;
                ++busy_pickers_now_;
                Rack& rack = w_.racks[p.queue.front()];
                ++rack.accum_processing;
                if (p.remaining_current == 0) {
                    ++items_done_;
                    dur_done_ += (*w_.items)[p.current_item].dur;
                    hash_event('I', p.current_item, w_.clock);
                    progress();
                    p.current_item = -1;
                    if (rack.batch.empty()) complete_rack(p, rack);
                }
            }
        }
    }

    void complete_rack(Picker& p, Rack& rack) {
        p.queue.pop_front();
        rack.batch_locked = false;
        return_queue_.push_back(rack.id);
        if (rack.assigned_robot >= 0)
            w_.robots[rack.assigned_robot].state = RobotState::Queuing;
        hash_event('R', rack.id, w_.clock);
    }

    void returns_phase() {
        if (return_queue_.empty()) return;
        auto t0 = std::chrono::steady_clock::now();
        std::vector<int> still;
        for (int rack_id : return_queue_) {
            if (!plan_return(rack_id)) {
                still.push_back(rack_id);
                ++nopath_;
            }
        }
        return_queue_ = std::move(still);
        ptc_ms_ += ms_since(t0);
    }

    bool plan_return(int rack_id) {
        Rack& rack = w_.racks[rack_id];
        Robot& rob = w_.robots[rack.assigned_robot];
        const Location station = w_.pickers[rack.picker].station;
        SearchStats st;
        auto path = planner_.find_path(w_, {station, rack.home, w_.clock + 1, true}, &st);
        note_search(st);
        if (!path) return false;
        path->robot_id = rob.id;
        path->purpose = LegPurpose::Return;
        w_.cdt.insert(*path);
        note_cdt_peak();
        rob.itinerary = path->steps;
        rob.it_next = 1;
        rob.pickup_end = -1;
        rob.state = RobotState::Returning;
        rob.loc = station;  // back on the grid from the next tick boundary
        rack.pos = RackPos::Carried;
        begin_segment(rob, {w_.clock + 1, station});
        hash_event('T', rack_id, w_.clock + 1);
        return true;
    }

    void finish_return(Robot& rob) {
        const int rack_id = rob.carried_rack;
        Rack& rack = w_.racks[rack_id];
        rack.pos = RackPos::AtHome;
        rack.assigned_robot = -1;
        rob.carried_rack = -1;
        rob.target_rack = -1;
        rob.itinerary.clear();
        rob.it_next = 0;
        rob.state = RobotState::Idle;
        w_.parked[w_.grid->cell_index(rob.loc)] = 1;
        close_segment(rob);
        last_return_ = std::max(last_return_, w_.clock + 1);
        hash_event('H', rack_id, w_.clock + 1);
        progress();
    }

    void check_no_overlap() {
        occupied_.clear();
        for (const Robot& r : w_.robots) {
            if (r.state == RobotState::Queuing || r.state == RobotState::AtProcessing) continue;
            const int c = w_.grid->cell_index(r.loc);
            if (!occupied_.insert(c).second)
                throw InvariantViolation("two robots share cell (" + std::to_string(r.loc.x) +
                                         "," + std::to_string(r.loc.y) + ") at t=" +
                                         std::to_string(w_.clock + 1));
        }
    }

    void begin_segment(Robot& rob, PathStep first) {
        if (trace_.is_open())
            trace_ << rob.id << ',' << first.t << ',' << first.loc.x << ',' << first.loc.y << '\n';
        if (!opt_.record_paths) return;
        Path seg;
        seg.robot_id = rob.id;
        seg.steps.push_back(first);
        segments_[rob.id].push_back(std::move(seg));
    }

    void record_step(Robot& rob, PathStep s) {
        if (trace_.is_open())
            trace_ << rob.id << ',' << s.t << ',' << s.loc.x << ',' << s.loc.y << '\n';
        if (!opt_.record_paths) return;
        segments_[rob.id].back().steps.push_back(s);
    }

    void close_segment(Robot&) {}

    void note_search(const SearchStats& st) { peak_open_ = std::max(peak_open_, st.open_peak); }
    void note_cdt_peak() { peak_cdt_ = std::max(peak_cdt_, w_.cdt.entry_count()); }
    void progress() { last_progress_ = w_.clock; }

    void hash_event(char code, long a, long b) {
        auto mix = [&](uint64_t v) {
            hash_ ^= v;
            hash_ *= 0x100000001b3ull;
        };
        mix(uint64_t(code));
        mix(uint64_t(a));
        mix(uint64_t(b));
        mix(uint64_t(w_.clock));
    }

    SimReport report() {
        SimReport rep;
        rep.makespan = last_return_;
        rep.first_emerge = first_emerge_;
        std::vector<Tick> pt, rt;
        for (const Picker& p : w_.pickers) pt.push_back(p.processed_ticks);
        for (const Robot& r : w_.robots) rt.push_back(r.working_ticks);
        rep.ppr = processing_rate_mean(pt, rep.makespan);
        rep.rwr = processing_rate_mean(rt, rep.makespan);
        rep.stc_ms = stc_ms_;
        rep.ptc_ms = ptc_ms_;
        rep.peak_cdt_entries = peak_cdt_;
        rep.peak_open_set = peak_open_;
        rep.mc_proxy = peak_cdt_ + peak_open_;
        rep.deliveries = deliveries_;
        rep.waits = waits_;
        rep.nopath_retries = nopath_;
        rep.items_processed = items_done_;
        rep.processed_duration = dur_done_;
        rep.event_hash = hash_;
        for (const Rack& r : w_.racks) rep.per_rack_deliveries.push_back(r.deliveries);
        if (opt_.record_paths)
            for (auto& segs : segments_)
                for (Path& p : segs) rep.executed.push_back(std::move(p));
        return rep;
    }

    World w_;
    Planner& planner_;
    Rng rng_;
    RunOptions opt_;

    std::vector<int> return_queue_;
    std::vector<std::vector<Path>> segments_;
    std::unordered_set<int> occupied_;
    std::ofstream tick_log_, trace_;

    long long budget_ = 0;
    Tick last_progress_ = 0;
    Tick last_return_ = 0;
    Tick first_emerge_ = 0;
    bool any_item_ = false;
    double stc_ms_ = 0, ptc_ms_ = 0;
    size_t peak_cdt_ = 0, peak_open_ = 0;
    long deliveries_ = 0, waits_ = 0, nopath_ = 0, items_done_ = 0, injected_ = 0;
    long long dur_done_ = 0;
    int busy_pickers_now_ = 0, busy_robots_now_ = 0;
    uint64_t hash_ = 1469598103934665603ull;
};

}  // namespace

std::string report_to_json(const SimReport& r, bool include_timing) {
    nlohmann::ordered_json j;
    j["makespan"] = r.makespan;
    j["first_emerge"] = r.first_emerge;
    j["ppr"] = r.ppr;
    j["rwr"] = r.rwr;
    if (include_timing) {
        j["stc_ms"] = r.stc_ms;
        j["ptc_ms"] = r.ptc_ms;
    }
    j["mc_proxy"] = r.mc_proxy;
    j["peak_cdt_entries"] = r.peak_cdt_entries;
    j["peak_open_set"] = r.peak_open_set;
    j["events"] = {{"deliveries", r.deliveries},
                   {"waits", r.waits},
                   {"nopath_retries", r.nopath_retries}};
    j["items_processed"] = r.items_processed;
    j["processed_duration"] = r.processed_duration;
    j["event_hash"] = r.event_hash;
    j["per_rack_deliveries"] = r.per_rack_deliveries;
    return j.dump(2);
}

SimReport run_simulation(const Scenario& s, Planner& planner, uint64_t seed,
                         const RunOptions& opt) {
    Engine engine(s, planner, seed, opt);
    return engine.run();
}

std::vector<SimReport> run_episodes(const Scenario& s, PlannerKind kind, const HyperParams& hp,
                                    uint64_t seed, int episodes, const RunOptions& opt,
                                    QTable* warm) {
    auto planner = make_planner(kind, s.layout, hp);
    if (warm && planner->qtable()) *planner->qtable() = *warm;
    std::vector<SimReport> out;
    for (int e = 0; e < episodes; ++e) {
        SimReport r = run_simulation(s, *planner, derive_seed(seed, uint64_t(e)), opt);
        if (e == 0) {
            r.stc_ms += planner->setup_select_ms();
            r.ptc_ms += planner->setup_path_ms();
        }
        out.push_back(std::move(r));
    }
    if (warm && planner->qtable()) *warm = *planner->qtable();
    return out;
}

}  // namespace rackplan
