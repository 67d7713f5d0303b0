#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "adrhp/rng.hpp"

namespace adrhp {

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double variance_of(const std::vector<double>& v) {
    double m = mean_of(v), s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

inline double standard_error(const std::vector<double>& v) {
    return std::sqrt(variance_of(v) / static_cast<double>(v.size()));
}

// One-sample Kolmogorov-Smirnov test against exponential(rate); returns the
// statistic. Critical value at level 0.01 is about 1.628/sqrt(n).
inline double ks_statistic_exponential(std::vector<double> samples, double rate) {
    if (samples.empty()) throw std::domain_error("KS test needs samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f = 1.0 - std::exp(-rate * samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

inline double ks_critical_001(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

// Two-group permutation test on the difference of means (first half vs
// second half of `values`); returns the p-value. Deterministic given seed.
inline double permutation_pvalue(const std::vector<double>& values, std::uint64_t seed,
                                 int permutations = 2000) {
    const std::size_t n = values.size();
    if (n < 4) throw std::domain_error("permutation test needs at least 4 values");
    const std::size_t half = n / 2;
    auto stat = [&](const std::vector<double>& v) {
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < half; ++i) a += v[i];
        for (std::size_t i = half; i < v.size(); ++i) b += v[i];
        return std::abs(a / half - b / (v.size() - half));
    };
    const double observed = stat(values);
    Rng rng(mix_keys(seed, 0x706du));
    std::vector<double> shuffled = values;
    int at_least = 0;
    for (int p = 0; p < permutations; ++p) {
        for (std::size_t i = n - 1; i > 0; --i) {
            std::size_t j = rng.next_u64() % (i + 1);
            std::swap(shuffled[i], shuffled[j]);
        }
        if (stat(shuffled) >= observed - 1e-15) ++at_least;
    }
    return (at_least + 1.0) / (permutations + 1.0);
}

}  // namespace adrhp
