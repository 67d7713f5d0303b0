#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace adrhp {

// splitmix64 step; the workhorse behind all keyed/counter-based streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Mix an arbitrary number of 64-bit keys into one. Used to derive
// independent sub-streams from (seed, stream_id, band, window, ...).
inline std::uint64_t mix_keys(std::uint64_t a) {
    std::uint64_t s = a;
    return splitmix64(s);
}
template <typename... Rest>
inline std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b, Rest... rest) {
    std::uint64_t s = a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2));
    std::uint64_t h = splitmix64(s) ^ b;
    if constexpr (sizeof...(rest) == 0) {
        return mix_keys(h);
    } else {
        return mix_keys(h, rest...);
    }
}

// Minimal deterministic generator. Not <random>: distribution algorithms in
// the standard library are implementation-defined, and reproducibility of the
// grain streams is a hard requirement of the coupling.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // uniform in (0,1] (never returns 0, safe for log()).
    double uniform() {
        const std::uint64_t u = next_u64() >> 11;  // 53 bits
        return (static_cast<double>(u) + 1.0) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

  private:
    std::uint64_t state_;
};

}  // namespace adrhp
