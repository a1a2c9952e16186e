#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "rackplan/nearest_racks.hpp"
#include "rackplan/path_cache.hpp"
#include "rackplan/rl.hpp"
#include "rackplan/rng.hpp"
#include "rackplan/search.hpp"
#include "rackplan/world.hpp"

namespace rackplan {

enum class PlannerKind { Ntp, Lef, Atp, Eatp };

std::optional<PlannerKind> parse_planner(std::string_view name);
std::string_view planner_name(PlannerKind k);

// Selection orders shared by the planners. All return selectable rack ids.
//
// Naive: pickers by ascending finish time (ties by picker id), each picker's
// racks by id.
std::vector<int> ntp_selection(const World& w);
// Least expiration first: racks by the emerge time of their oldest pending
// item, ties by rack id.
std::vector<int> lef_selection(const World& w);
// Most-slack-picker-first: racks by ascending picker finish time, ties by
// rack id, truncated to the available robot count.
std::vector<int> greedy_bootstrap_selection(const World& w, size_t robot_limit);

// A task planner: picks racks each tick and answers path queries for the
// engine. Selection order defines reservation order.
class Planner {
public:
    Planner(const GridMap& g, const HyperParams& hp) : grid_(&g), hp_(hp) {}
    virtual ~Planner() = default;

    virtual PlannerKind kind() const = 0;
    virtual std::vector<int> select(const World& w, const std::vector<int>& idle, Rng& rng) = 0;

    virtual std::optional<Path> find_path(const World& w, const SearchQuery& q,
                                          SearchStats* stats) const {
        SearchContext ctx{grid_, &w.cdt, &w.parked};
        return astar(ctx, q, stats);
    }

    virtual QTable* qtable() { return nullptr; }

    const HyperParams& params() const { return hp_; }
    // One-time index/cache construction cost, folded into the phase totals.
    double setup_select_ms() const { return setup_select_ms_; }
    double setup_path_ms() const { return setup_path_ms_; }

protected:
    const GridMap* grid_;
    HyperParams hp_;
    double setup_select_ms_ = 0;
    double setup_path_ms_ = 0;
};

std::unique_ptr<Planner> make_planner(PlannerKind k, const GridMap& g, const HyperParams& hp);

}  // namespace rackplan
