#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "adrhp/grain_stream.hpp"
#include "adrhp/model.hpp"
#include "adrhp/point_path.hpp"

namespace adrhp {

// Seed derivation shared by the particle and limit sides of the coupling;
// both must see the same pasts and the same grain streams.
inline std::uint64_t stream_seed(std::uint64_t seed) { return mix_keys(seed, 0x53u); }
inline std::uint64_t weight_seed(std::uint64_t seed) { return mix_keys(seed, 0x57u); }

inline std::vector<double> sample_initial_pasts(const InitialLaw& law, int n,
                                                std::uint64_t seed) {
    std::vector<double> t0(n);
    for (int i = 0; i < n; ++i) {
        Rng rng(mix_keys(seed, 0x50u, static_cast<std::uint64_t>(i)));
        t0[i] = -law.sample_age(rng);
    }
    return t0;
}

struct AuditEntry {
    double time;
    int particle;
    double intensity;  // at acceptance
    double envelope;   // dominating level at acceptance
};

struct ParticleSystemRun {
    int n = 0;
    double theta = 0.0;
    std::uint64_t seed = 0;
    std::vector<PointPath> paths;
    KernelSpec base;
    Eigen::MatrixXd weights;
    std::vector<AuditEntry> audit;

    std::size_t total_events() const {
        std::size_t s = 0;
        for (const auto& p : paths) s += p.events.size();
        return s;
    }
};

/// Exact event-driven simulation of the n-particle system by thinning
/// against per-particle grain streams.
ParticleSystemRun simulate_adrhp(const ModelSpec& model, int n, double theta,
                                 std::uint64_t seed);

/// The dominating linear process built from the same streams, pasts and
/// weights: rate sup_s Psi(s,0) + Lip * (1/n) sum_j (|H_ij| * events + |F_ij|).
/// Its paths contain the paired simulate_adrhp paths point for point.
ParticleSystemRun simulate_dominating_linear(const ModelSpec& model, int n, double theta,
                                             std::uint64_t seed);

}  // namespace adrhp
