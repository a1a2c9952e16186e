#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>

#include "rackplan/geometry.hpp"
#include "rackplan/rng.hpp"

namespace rackplan {

// MDP state of one rack: accumulative processing time of its picker (ap)
// and of the rack itself (ar). ar <= ap for every reachable state.
struct RackState {
    Tick ap = 0;
    Tick ar = 0;
    bool operator==(const RackState&) const = default;
};

struct HyperParams {
    double delta = 0.2;       // greedy bootstrap probability per tick
    double beta = 0.1;        // learning rate
    double gamma = 0.9;       // discount factor
    double epsilon = 0.1;     // exploration probability
    int fanout = 8;           // K nearest racks per cell
    int cache_threshold = 50; // L
    Tick bucket_width = 60;   // state bucketization, ticks per bucket

    void validate() const;  // throws ConfigError
};

// Tabular action-value function over bucketized states and binary actions.
// Missing keys read as 0.
class QTable {
public:
    explicit QTable(Tick bucket_width = 60) : bucket_(bucket_width) {}

    double value(RackState s, int action) const;
    long visits(RackState s, int action) const;
    void set(RackState s, int action, double v, long n);  // snapshot import / tests

    Tick bucket_width() const { return bucket_; }
    size_t size() const { return table_.size(); }

    std::string to_json() const;
    static QTable from_json(const std::string& text);

private:
    friend void q_update(QTable&, RackState, int, double, RackState, const HyperParams&);

    struct Slot {
        double v[2] = {0.0, 0.0};
        long n[2] = {0, 0};
    };
    uint64_t key(RackState s) const {
        return (uint64_t(s.ap / bucket_) << 32) | uint64_t(s.ar / bucket_);
    }

    std::unordered_map<uint64_t, Slot> table_;
    Tick bucket_;
};

// f_p: remaining time of the current item plus all pending work queued at
// the picker.
Tick finish_picker(Tick remaining_current, std::span<const Tick> queued_rack_sums);

// Selection reward: c = -(max(f_p, deliver_distance) + pending_sum).
double reward(Tick f_p, Tick deliver_distance, Tick pending_sum);

// Finish-time estimator for a selected rack, evaluated exactly as the
// closed form reads: trip out, queuing surcharge max(trip - f_p, 0),
// processing, trip home. An estimator only; the engine computes true
// queuing from FIFO dynamics.
Tick finish_rack_estimate(Tick t_k, Tick d_robot_rack, Tick d_rack_picker, Tick f_p,
                          Tick pending_sum, Tick d_picker_rack);

// One temporal-difference step:
// q(s,a) += beta * (c + gamma * max_a' q(s',a') - q(s,a)).
void q_update(QTable& q, RackState s, int action, double c, RackState s_next,
              const HyperParams& hp);

// Best action with probability 1-epsilon (ties prefer requesting), uniform
// random action otherwise.
int epsilon_greedy(const QTable& q, RackState s, const HyperParams& hp, Rng& rng);

// Model transition: requesting advances both accumulators by the rack's
// pending processing total; declining leaves the state unchanged.
RackState transition(RackState s, int action, Tick pending_sum);

}  // namespace rackplan
