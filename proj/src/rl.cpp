#include "rackplan/rl.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "rackplan/errors.hpp"

namespace rackplan {

void HyperParams::validate() const {
    if (delta < 0 || delta > 1) throw ConfigError("delta must be in [0,1]");
    if (epsilon < 0 || epsilon > 1) throw ConfigError("epsilon must be in [0,1]");
    if (beta <= 0 || beta > 1) throw ConfigError("beta must be in (0,1]");
    if (gamma < 0 || gamma > 1) throw ConfigError("gamma must be in [0,1]");
    if (fanout < 1) throw ConfigError("fanout K must be >= 1");
    if (cache_threshold < 1) throw ConfigError("cache threshold L must be >= 1");
    if (bucket_width < 1) throw ConfigError("bucket width must be >= 1");
}

double QTable::value(RackState s, int action) const {
    auto it = table_.find(key(s));
    return it == table_.end() ? 0.0 : it->second.v[action];
}

long QTable::visits(RackState s, int action) const {
    auto it = table_.find(key(s));
    return it == table_.end() ? 0 : it->second.n[action];
}

void QTable::set(RackState s, int action, double v, long n) {
    Slot& slot = table_[key(s)];
    slot.v[action] = v;
    slot.n[action] = n;
}

std::string QTable::to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    std::vector<uint64_t> keys;
    keys.reserve(table_.size());
    for (const auto& [k, _] : table_) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    for (uint64_t k : keys) {
        const Slot& slot = table_.at(k);
        for (int a = 0; a < 2; ++a) {
            if (slot.n[a] == 0 && slot.v[a] == 0.0) continue;
            nlohmann::ordered_json row;
            row["ap_bucket"] = k >> 32;
            row["ar_bucket"] = k & 0xffffffffull;
            row["action"] = a;
            row["value"] = slot.v[a];
            row["visits"] = slot.n[a];
            arr.push_back(row);
        }
    }
    nlohmann::ordered_json doc;
    doc["bucket_width"] = bucket_;
    doc["entries"] = arr;
    return doc.dump(2);
}

QTable QTable::from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("q-table: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("bucket_width") || !doc.contains("entries"))
        throw SchemaError("q-table: expected {bucket_width, entries}");
    QTable q(doc["bucket_width"].get<Tick>());
    for (const auto& row : doc["entries"]) {
        uint64_t ap = row.at("ap_bucket").get<uint64_t>();
        uint64_t ar = row.at("ar_bucket").get<uint64_t>();
        int a = row.at("action").get<int>();
        if (a != 0 && a != 1) throw SchemaError("q-table: action must be 0 or 1");
        Slot& slot = q.table_[(ap << 32) | ar];
        slot.v[a] = row.at("value").get<double>();
        slot.n[a] = row.at("visits").get<long>();
    }
    return q;
}

Tick finish_picker(Tick remaining_current, std::span<const Tick> queued_rack_sums) {
    Tick f = remaining_current;
    for (Tick s : queued_rack_sums) f += s;
    return f;
}

double reward(Tick f_p, Tick deliver_distance, Tick pending_sum) {
    return -double(std::max(f_p, deliver_distance) + pending_sum);
}

Tick finish_rack_estimate(Tick t_k, Tick d_robot_rack, Tick d_rack_picker, Tick f_p,
                          Tick pending_sum, Tick d_picker_rack) {
    const Tick trip = d_robot_rack + d_rack_picker;
    return t_k + trip + std::max<Tick>(trip - f_p, 0) + pending_sum + d_picker_rack;
}

void q_update(QTable& q, RackState s, int action, double c, RackState s_next,
              const HyperParams& hp) {
    const double best_next = std::max(q.value(s_next, 0), q.value(s_next, 1));
    QTable::Slot& slot = q.table_[q.key(s)];
    slot.v[action] += hp.beta * (c + hp.gamma * best_next - slot.v[action]);
    slot.n[action] += 1;
}

int epsilon_greedy(const QTable& q, RackState s, const HyperParams& hp, Rng& rng) {
    if (rng.uniform01() < hp.epsilon) return int(rng.uniform_int(0, 1));
    // tie prefers requesting so a cold table still moves racks
    return q.value(s, 1) >= q.value(s, 0) ? 1 : 0;
}

RackState transition(RackState s, int action, Tick pending_sum) {
    if (action == 0) return s;
    return {s.ap + pending_sum, s.ar + pending_sum};
}

}  // namespace rackplan
