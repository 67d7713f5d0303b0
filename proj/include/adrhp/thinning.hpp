#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "adrhp/errors.hpp"
#include "adrhp/grain_stream.hpp"

namespace adrhp {

/// Dominating rate, constant between its breakpoints. level(t) = levels[k]
/// for t in [times[k], times[k+1]), extended by the last level past the end.
struct PiecewiseConstantEnvelope {
    std::vector<double> times;   // increasing, times[0] = segment start
    std::vector<double> levels;  // same length

    static PiecewiseConstantEnvelope constant(double level) { return {{0.0}, {level}}; }

    double level_at(double t) const {
        std::size_t k = 0;
        while (k + 1 < times.size() && times[k + 1] <= t) ++k;
        return levels[k];
    }
};

/// First accepted grain of the thinning scheme on (t_now, horizon], or
/// nullopt. `intensity` evaluates the predictable intensity at a candidate
/// time; exactness requires envelope >= intensity throughout, and any
/// observed breach is a hard fault.
inline std::optional<Grain> thin_next_event(GrainStream& stream, double t_now, double horizon,
                                            const PiecewiseConstantEnvelope& env,
                                            const std::function<double(double)>& intensity) {
    if (horizon <= t_now) return std::nullopt;
    for (std::size_t k = 0; k < env.times.size(); ++k) {
        double seg0 = std::max(env.times[k], t_now);
        double seg1 = (k + 1 < env.times.size()) ? env.times[k + 1] : horizon;
        seg1 = std::min(seg1, horizon);
        if (seg1 <= seg0) continue;
        const double level = env.levels[k];
        if (level <= 0.0) continue;  // intensity must be 0 here; nothing can fire
        for (const Grain& g : stream.grains_in(seg0, seg1, level)) {
            if (g.t <= t_now) continue;
            const double lam = intensity(g.t);
            if (lam > level)
                throw EnvelopeViolation("thinning envelope below intensity at t=" +
                                        std::to_string(g.t));
            if (g.x <= lam) return g;
        }
    }
    return std::nullopt;
}

}  // namespace adrhp
