#include "rackplan/planners.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace rackplan {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

std::optional<PlannerKind> parse_planner(std::string_view name) {
    if (name == "ntp") return PlannerKind::Ntp;
    if (name == "lef") return PlannerKind::Lef;
    if (name == "atp") return PlannerKind::Atp;
    if (name == "eatp") return PlannerKind::Eatp;
    return std::nullopt;
}

std::string_view planner_name(PlannerKind k) {
    switch (k) {
        case PlannerKind::Ntp: return "ntp";
        case PlannerKind::Lef: return "lef";
        case PlannerKind::Atp: return "atp";
        case PlannerKind::Eatp: return "eatp";
    }
    return "?";
}

std::vector<int> ntp_selection(const World& w) {
    std::vector<int> porder(w.pickers.size());
    std::iota(porder.begin(), porder.end(), 0);
    std::vector<Tick> fp(w.pickers.size());
    for (size_t p = 0; p < w.pickers.size(); ++p) fp[p] = w.picker_finish(int(p));
    std::sort(porder.begin(), porder.end(),
              [&](int a, int b) { return fp[a] != fp[b] ? fp[a] < fp[b] : a < b; });

    std::vector<std::vector<int>> by_picker(w.pickers.size());
    for (const Rack& r : w.racks)
        if (r.selectable()) by_picker[r.picker].push_back(r.id);  // rack ids ascend

    std::vector<int> out;
    for (int p : porder)
        for (int r : by_picker[p]) out.push_back(r);
    return out;
}

std::vector<int> lef_selection(const World& w) {
    std::vector<int> out;
    for (const Rack& r : w.racks)
        if (r.selectable()) out.push_back(r.id);
    std::sort(out.begin(), out.end(), [&](int a, int b) {
        Tick ea = w.oldest_pending(a), eb = w.oldest_pending(b);
        return ea != eb ? ea < eb : a < b;
    });
    return out;
}

std::vector<int> greedy_bootstrap_selection(const World& w, size_t robot_limit) {
    std::vector<int> out;
    for (const Rack& r : w.racks)
        if (r.selectable()) out.push_back(r.id);
    std::vector<Tick> fp(w.pickers.size());
    for (size_t p = 0; p < w.pickers.size(); ++p) fp[p] = w.picker_finish(int(p));
    std::sort(out.begin(), out.end(), [&](int a, int b) {
        Tick fa = fp[w.racks[a].picker], fb = fp[w.racks[b].picker];
        return fa != fb ? fa < fb : a < b;
    });
    if (out.size() > robot_limit) out.resize(robot_limit);
    return out;
}

namespace {

class NtpPlanner final : public Planner {
public:
    using Planner::Planner;
    PlannerKind kind() const override { return PlannerKind::Ntp; }
    std::vector<int> select(const World& w, const std::vector<int>&, Rng&) override {
        return ntp_selection(w);
    }
};

class LefPlanner final : public Planner {
public:
    using Planner::Planner;
    PlannerKind kind() const override { return PlannerKind::Lef; }
    std::vector<int> select(const World& w, const std::vector<int>&, Rng&) override {
        return lef_selection(w);
    }
};

// Q-learning rack selection (shared by the plain and the accelerated
// planner). Every selection drives a temporal-difference update with the
// reward computed at selection time.
class AdaptivePlanner : public Planner {
public:
    AdaptivePlanner(const GridMap& g, const HyperParams& hp) : Planner(g, hp), q_(hp.bucket_width) {}

    QTable* qtable() override { return &q_; }

    std::vector<int> select(const World& w, const std::vector<int>& idle, Rng& rng) override {
        if (rng.bernoulli(hp_.delta)) {
            auto picks = greedy_bootstrap_selection(w, idle.size());
            for (int r : picks) learn_selected(w, r);
            return picks;
        }
        return bootstrap_select(w, idle, rng);
    }

protected:
    virtual std::vector<int> bootstrap_select(const World& w, const std::vector<int>& idle,
                                              Rng& rng) = 0;

    void learn_selected(const World& w, int rack) {
        const Rack& r = w.racks[rack];
        const RackState s = w.rack_state(rack);
        const Tick d = manhattan(r.home, w.pickers[r.picker].station);
        const double c = reward(w.picker_finish(r.picker), d, r.pending_sum);
        q_update(q_, s, 1, c, transition(s, 1, r.pending_sum), hp_);
    }

    QTable q_;
};

class AtpPlanner final : public AdaptivePlanner {
public:
    using AdaptivePlanner::AdaptivePlanner;
    PlannerKind kind() const override { return PlannerKind::Atp; }

protected:
    // Racks ordered by q(s_r, 0) descending; one policy draw per rack until
    // every idle robot has work.
    std::vector<int> bootstrap_select(const World& w, const std::vector<int>& idle,
                                      Rng& rng) override {
        std::vector<int> order;
        for (const Rack& r : w.racks)
            if (r.selectable()) order.push_back(r.id);
        std::vector<double> q0(order.size());
        std::vector<size_t> idx(order.size());
        std::iota(idx.begin(), idx.end(), 0);
        for (size_t i = 0; i < order.size(); ++i) q0[i] = q_.value(w.rack_state(order[i]), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
            return q0[a] != q0[b] ? q0[a] > q0[b] : order[a] < order[b];
        });

        std::vector<int> picks;
        for (size_t i : idx) {
            int rack = order[i];
            if (epsilon_greedy(q_, w.rack_state(rack), hp_, rng) == 1) {
                picks.push_back(rack);
                learn_selected(w, rack);
            }
            if (picks.size() == idle.size()) break;
        }
        return picks;
    }
};

class EatpPlanner final : public AdaptivePlanner {
public:
    EatpPlanner(const GridMap& g, const HyperParams& hp) : AdaptivePlanner(g, hp) {
        auto t0 = std::chrono::steady_clock::now();
        index_ = std::make_unique<NearestRackIndex>(g, std::min(hp.fanout, g.rack_count()));
        setup_select_ms_ = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        cache_ = std::make_unique<PathCache>(g, hp.cache_threshold);
        setup_path_ms_ = ms_since(t0);
    }

    PlannerKind kind() const override { return PlannerKind::Eatp; }

    std::optional<Path> find_path(const World& w, const SearchQuery& q,
                                  SearchStats* stats) const override {
        SearchContext ctx{grid_, &w.cdt, &w.parked};
        return cache_aided_astar(ctx, *cache_, q, stats);
    }

protected:
    // Requesting side flipped: each idle robot scans its K nearest racks and
    // takes the first one the policy accepts.
    std::vector<int> bootstrap_select(const World& w, const std::vector<int>& idle,
                                      Rng& rng) override {
        std::vector<int> picks;
        std::vector<uint8_t> taken(w.racks.size(), 0);
        for (int rid : idle) {
            for (int32_t rack : index_->nearest(w.robots[rid].loc)) {
                if (taken[rack] || !w.racks[rack].selectable()) continue;
                if (epsilon_greedy(q_, w.rack_state(rack), hp_, rng) == 1) {
                    taken[rack] = 1;
                    picks.push_back(rack);
                    learn_selected(w, rack);
                    break;
                }
            }
        }
        return picks;
    }

private:
    std::unique_ptr<NearestRackIndex> index_;
    std::unique_ptr<PathCache> cache_;
};

}  // namespace

std::unique_ptr<Planner> make_planner(PlannerKind k, const GridMap& g, const HyperParams& hp) {
    hp.validate();
    switch (k) {
        case PlannerKind::Ntp: return std::make_unique<NtpPlanner>(g, hp);
        case PlannerKind::Lef: return std::make_unique<LefPlanner>(g, hp);
        case PlannerKind::Atp: return std::make_unique<AtpPlanner>(g, hp);
        case PlannerKind::Eatp: return std::make_unique<EatpPlanner>(g, hp);
    }
    return nullptr;
}

}  // namespace rackplan
