#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "adrhp/rng.hpp"

namespace adrhp {

struct Grain {
    double t;  // time
    double x;  // mark level
};

/// Lazy unit-rate Poisson measure on [0,inf) x [0,inf).
///
/// The plane is tiled into unit cells (time window w, level band b); the
/// grains of a cell are a pure function of (seed, stream_id, b, w), generated
/// on first touch and cached. Consumers asking for different dominating
/// levels therefore see restrictions of one single measure: the set of grains
/// below any level L is identical across queries, instantiations and query
/// order. The coupling's correctness rests on exactly this property.
class GrainStream {
  public:
    GrainStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_id_(stream_id) {}

    std::uint64_t stream_id() const { return stream_id_; }

    // All grains in [t0,t1] x [0,level], time-sorted.
    std::vector<Grain> grains_in(double t0, double t1, double level) {
        if (level <= 0.0) throw std::domain_error("grains_in: level must be > 0");
        if (t0 < 0.0 || t1 < t0) throw std::domain_error("grains_in: bad time window");
        std::vector<Grain> out;
        if (t1 == t0) return out;
        const std::int64_t w0 = static_cast<std::int64_t>(std::floor(t0));
        const std::int64_t w1 = static_cast<std::int64_t>(std::floor(t1));
        const std::int64_t bmax = static_cast<std::int64_t>(std::ceil(level));
        for (std::int64_t w = w0; w <= w1; ++w) {
            for (std::int64_t b = 0; b < bmax; ++b) {
                for (const Grain& g : cell(b, w)) {
                    if (g.t >= t0 && g.t <= t1 && g.x <= level) out.push_back(g);
                }
            }
        }
        std::sort(out.begin(), out.end(), [](const Grain& a, const Grain& b) { return a.t < b.t; });
        return out;
    }

  private:
    const std::vector<Grain>& cell(std::int64_t band, std::int64_t window) {
        const std::uint64_t key =
            (static_cast<std::uint64_t>(band) << 32) | static_cast<std::uint64_t>(window);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        // unit-rate Poisson points along time (exponential gaps), marks
        // uniform within the band
        Rng rng(mix_keys(seed_, stream_id_, static_cast<std::uint64_t>(band),
                         static_cast<std::uint64_t>(window)));
        std::vector<Grain> grains;
        double t = static_cast<double>(window);
        const double end = t + 1.0;
        for (;;) {
            t += rng.exponential(1.0);
            if (t >= end) break;
            double x = static_cast<double>(band) + rng.uniform();
            grains.push_back({t, x});
        }
        return cache_.emplace(key, std::move(grains)).first->second;
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::unordered_map<std::uint64_t, std::vector<Grain>> cache_;
};

}  // namespace adrhp
