#include "rackplan/nearest_racks.hpp"

#include <algorithm>
#include <numeric>

#include "rackplan/errors.hpp"

namespace rackplan {

NearestRackIndex::NearestRackIndex(const GridMap& g, int fanout)
    : grid_(&g), fanout_(fanout) {
    if (fanout < 1) throw ConfigError("nearest-rack fanout must be >= 1");
    if (fanout > g.rack_count())
        throw ConfigError("nearest-rack fanout " + std::to_string(fanout) + " exceeds rack count " +
                          std::to_string(g.rack_count()));

    const int n = g.height * g.width;
    lists_.resize(size_t(n) * fanout_);
    std::vector<int32_t> order(g.rack_count());
    for (int cell = 0; cell < n; ++cell) {
        Location l{cell % g.width, cell / g.width};
        std::iota(order.begin(), order.end(), 0);
        auto closer = [&](int32_t a, int32_t b) {
            Tick da = manhattan(l, g.rack_homes[a]);
            Tick db = manhattan(l, g.rack_homes[b]);
            return da != db ? da < db : a < b;
        };
        std::partial_sort(order.begin(), order.begin() + fanout_, order.end(), closer);
        std::copy(order.begin(), order.begin() + fanout_, &lists_[size_t(cell) * fanout_]);
    }
}

}  // namespace rackplan
