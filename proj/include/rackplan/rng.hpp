#pragma once

#include <cmath>
#include <cstdint>

namespace rackplan {

// splitmix64 stream. Self-contained so generated scenarios and policies are
// reproducible across standard libraries and releases.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [lo, hi], inclusive.
    int64_t uniform_int(int64_t lo, int64_t hi) {
        return lo + int64_t(next() % uint64_t(hi - lo + 1));
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Exponential inter-arrival gap with the given rate.
    double exponential(double rate) { return -std::log(1.0 - uniform01()) / rate; }

private:
    uint64_t state_;
};

// Derives an independent stream, e.g. one per episode.
inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    Rng r(seed ^ (0x517cc1b727220a95ull * (stream + 1)));
    return r.next();
}

}  // namespace rackplan
