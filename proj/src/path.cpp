#include "rackplan/path.hpp"

#include <algorithm>

namespace rackplan {

bool Path::valid() const {
    if (steps.empty()) return false;
    for (size_t i = 1; i < steps.size(); ++i) {
        if (steps[i].t != steps[i - 1].t + 1) return false;
        if (!adjacent_or_equal(steps[i - 1].loc, steps[i].loc)) return false;
    }
    return true;
}

std::optional<Conflict> detect_conflict(const Path& p, const Path& q) {
    if (p.empty() || q.empty()) return std::nullopt;
    const Tick lo = std::max(p.start_time(), q.start_time());
    const Tick hi = std::min(p.end_time(), q.end_time());
    for (Tick t = lo; t <= hi; ++t) {
        if (p.at(t) == q.at(t)) return Conflict{ConflictKind::SingleGrid, t, p.at(t), q.at(t)};
        if (t + 1 <= hi) {
            Location pa = p.at(t), pb = p.at(t + 1);
            Location qa = q.at(t), qb = q.at(t + 1);
            if (pa == qb && pb == qa && pa != pb)
                return Conflict{ConflictKind::InterGrid, t, pa, qa};
        }
    }
    return std::nullopt;
}

}  // namespace rackplan
