#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace adrhp {

/// One particle's event times: a single past point T0 <= 0 plus the sorted
/// positive events on (0, theta].
struct PointPath {
    double past = 0.0;                // T0 = -initial age
    std::vector<double> events;       // strictly increasing, all > 0
    double theta = 0.0;               // horizon

    // last point <= t (strict = false) or < t (strict = true, predictable)
    double last_point_before(double t, bool strict) const {
        double last = past;
        for (double e : events) {
            if (strict ? (e < t) : (e <= t))
                last = e;
            else
                break;
        }
        return last;
    }
};

// Age at time t: t minus the last point at or before t (predictable variant
// uses strictly-before, so the age jumps to 0 just after an event).
inline double age_at(const PointPath& path, double t, bool predictable) {
    if (t < 0.0 || t > path.theta)
        throw std::domain_error("age_at: time outside [0, theta]");
    if (path.past > 0.0)
        throw std::logic_error("age_at: past point must be <= 0");
    return t - path.last_point_before(t, predictable);
}

}  // namespace adrhp
