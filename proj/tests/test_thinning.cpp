#include <doctest.h>

#include <cmath>

#include "adrhp/stats.hpp"
#include "adrhp/thinning.hpp"

using namespace adrhp;

TEST_CASE("grains_in basics") {
    GrainStream s(1, 0);
    CHECK(s.grains_in(2.0, 2.0, 3.0).empty());
    CHECK_THROWS_AS(s.grains_in(0.0, 1.0, 0.0), std::domain_error);

    auto a = s.grains_in(0.0, 5.0, 2.0);
    auto b = s.grains_in(0.0, 5.0, 2.0);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].t == b[i].t);
        CHECK(a[i].x == b[i].x);
    }
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i - 1].t < a[i].t);
    for (const auto& g : a) {
        CHECK(g.t >= 0.0);
        CHECK(g.t <= 5.0);
        CHECK(g.x >= 0.0);
        CHECK(g.x <= 2.0);
    }
}

TEST_CASE("band consistency: lower level is an exact subset") {
    for (std::uint64_t sid = 0; sid < 5; ++sid) {
        GrainStream s1(9, sid), s2(9, sid);
        auto low = s1.grains_in(0.0, 8.0, 1.3);
        auto high = s2.grains_in(0.0, 8.0, 3.7);
        std::size_t j = 0;
        for (const auto& g : high) {
            if (g.x <= 1.3) {
                REQUIRE(j < low.size());
                CHECK(low[j].t == g.t);
                CHECK(low[j].x == g.x);
                ++j;
            }
        }
        CHECK(j == low.size());
    }
}

TEST_CASE("grain counts have Poisson moments") {
    // level 3, window length 10: mean and variance of counts near 30
    const int reps = 1000;
    std::vector<double> counts;
    for (int r = 0; r < reps; ++r) {
        GrainStream s(777, static_cast<std::uint64_t>(r));
        counts.push_back(static_cast<double>(s.grains_in(0.0, 10.0, 3.0).size()));
    }
    double m = mean_of(counts), v = variance_of(counts);
    double se_mean = std::sqrt(30.0 / reps);
    CHECK(std::abs(m - 30.0) < 4.0 * se_mean);
    // var of the sample variance of Poisson(30): approx (mu + 2 mu^2)/reps
    double se_var = std::sqrt((30.0 + 2.0 * 30.0 * 30.0) / reps);
    CHECK(std::abs(v - 30.0) < 4.0 * se_var);
}

TEST_CASE("distinct streams are uncorrelated") {
    const int windows = 1000;
    std::vector<double> x, y;
    GrainStream a(5, 1), b(5, 2);
    for (int w = 0; w < windows; ++w) {
        x.push_back(static_cast<double>(a.grains_in(w, w + 1.0, 2.0).size()));
        y.push_back(static_cast<double>(b.grains_in(w, w + 1.0, 2.0).size()));
    }
    double mx = mean_of(x), my = mean_of(y), c = 0.0;
    for (int i = 0; i < windows; ++i) c += (x[i] - mx) * (y[i] - my);
    c /= windows;
    double corr = c / std::sqrt(variance_of(x) * variance_of(y));
    CHECK(std::abs(corr) < 4.0 / std::sqrt(static_cast<double>(windows)));
}

TEST_CASE("thin_next_event basics") {
    GrainStream s(3, 0);
    auto env = PiecewiseConstantEnvelope::constant(1.0);
    auto none = thin_next_event(s, 0.0, 10.0, env, [](double) { return 0.0; });
    CHECK_FALSE(none.has_value());

    // accept-all at the envelope returns the very first grain
    GrainStream s2(3, 0);
    auto first = thin_next_event(s2, 0.0, 10.0, env, [](double) { return 1.0; });
    auto grains = s2.grains_in(0.0, 10.0, 1.0);
    REQUIRE(first.has_value());
    REQUIRE(!grains.empty());
    CHECK(first->t == grains.front().t);
}

TEST_CASE("envelope audit trips on an understated envelope") {
    GrainStream s(3, 0);
    auto env = PiecewiseConstantEnvelope::constant(0.5);
    CHECK_THROWS_AS(thin_next_event(s, 0.0, 50.0, env, [](double) { return 2.0; }),
                    EnvelopeViolation);
}

TEST_CASE("constant-rate gaps are exponential") {
    // first-event times at rate c from fresh streams: mean within 4 SE of 1/c
    const double c = 2.0;
    const int reps = 10000;
    std::vector<double> gaps;
    for (int r = 0; r < reps; ++r) {
        GrainStream s(21, static_cast<std::uint64_t>(r));
        auto env = PiecewiseConstantEnvelope::constant(c);
        auto g = thin_next_event(s, 0.0, 100.0, env, [&](double) { return c; });
        REQUIRE(g.has_value());
        gaps.push_back(g->t);
    }
    double se = (1.0 / c) / std::sqrt(static_cast<double>(reps));
    CHECK(std::abs(mean_of(gaps) - 0.5) < 4.0 * se);
    // KS against exponential(2) at level 0.01, deterministic verdict
    CHECK(ks_statistic_exponential(gaps, c) < ks_critical_001(gaps.size()));
}

TEST_CASE("zero intensity accepts nothing regardless of grains") {
    GrainStream s(8, 4);
    auto env = PiecewiseConstantEnvelope::constant(1.0);
    auto g = thin_next_event(s, 0.0, 20.0, env, [](double) { return 0.0; });
    CHECK_FALSE(g.has_value());
}
