#include <doctest.h>

#include <cmath>

#include "adrhp/limit.hpp"
#include "adrhp/particle.hpp"
#include "adrhp/stats.hpp"

using namespace adrhp;

namespace {

ModelSpec h2_model() {
    ModelSpec m;
    m.kernel = {KernelSpec::exponential(1.0, 2.0), WeightLaw::deterministic(1.0)};
    m.psi = IntensityFn::affine(1.0, 1.0);
    m.initial = InitialLaw::exponential_age(1.0);
    m.past = PastInfluenceLaw::zero();
    return m;
}

}  // namespace

TEST_CASE("Volterra pipeline: closed-form linear Hawkes mean intensity") {
    // lambda' = (alpha - beta) lambda + beta mu with lambda(0) = mu gives
    // 2 - e^{-t} for alpha=1, beta=2, mu=1
    ModelSpec m = h2_model();
    Grid1D g{1e-3, 5.0, 1e-3};
    auto c = mean_intensity_age_independent(m, g);
    double err = 0.0;
    for (int k = 0; k <= g.K(); ++k)
        err = std::max(err, std::abs(c.lambda(k) - (2.0 - std::exp(-g.t(k)))));
    CHECK(err < 1e-4);
}

TEST_CASE("Volterra pipeline: degenerate cases") {
    ModelSpec m = h2_model();
    m.psi = IntensityFn::constant(1.7);
    Grid1D g{1e-3, 2.0, 1e-3};
    auto c = mean_intensity_age_independent(m, g);
    CHECK((c.lambda.array() - 1.7).abs().maxCoeff() < 1e-12);

    ModelSpec z = h2_model();
    z.kernel.base = KernelSpec::zero();
    z.past = PastInfluenceLaw::common_stimulus(-0.5);
    z.kernel.base = KernelSpec::zero();
    auto cz = mean_intensity_age_independent(z, g);
    // zero kernel kills both the feedback and the past influence (F uses H)
    CHECK((cz.lambda.array() - z.psi.eval_phi(0.0)).abs().maxCoeff() < 1e-12);
}

TEST_CASE("Volterra pipeline: uniform bound of the stationary regime") {
    ModelSpec m = h2_model();
    m.kernel.base = KernelSpec::exponential(1.0, 4.0);  // Lip * ||h||_1 = 1/4
    Grid1D g{1e-3, 10.0, 1e-3};
    auto c = mean_intensity_age_independent(m, g);
    double bound = (m.psi.eval_phi(0.0) + 0.0) / (1.0 - 0.25);
    CHECK(c.lambda.maxCoeff() <= bound + 10.0 * g.delta);
}

TEST_CASE("bounded pipeline: constant intensity and no-feedback cases") {
    ModelSpec m = h2_model();
    m.psi = IntensityFn::constant(1.0);
    Grid1D g;
    g.delta = 2e-3;
    g.T = 2.0;
    g.s_max = required_s_max(m.initial, g.T);
    auto [c, dg] = mean_intensity_bounded(m, g);
    CHECK((c.lambda.array() - 1.0).abs().maxCoeff() < 5e-3);

    ModelSpec z = h2_model();
    z.psi = IntensityFn::sigmoid(2.0, 1.0, 0.0);
    z.kernel.base = KernelSpec::zero();
    auto [cz, dgz] = mean_intensity_bounded(z, g);
    // h = 0 and F = 0: lambda(t) = Phi(0) for all t
    CHECK((cz.lambda.array() - z.psi.eval_phi(0.0)).abs().maxCoeff() < 5e-3);
}

TEST_CASE("regimes agree for a bounded age-independent model") {
    ModelSpec m = h2_model();
    m.psi = IntensityFn::clipped_affine(1.0, 1.0, 3.0);  // bounded, delta = 0
    Grid1D g;
    g.delta = 1e-3;
    g.T = 3.0;
    g.s_max = required_s_max(m.initial, g.T);
    auto volterra = mean_intensity_age_independent(m, g);
    auto [pde, dg] = mean_intensity_bounded(m, g);
    CHECK((volterra.lambda - pde.lambda).cwiseAbs().maxCoeff() < 2e-2);
}

TEST_CASE("limit sampler: refractory and empirical rate") {
    ModelSpec m = h2_model();
    m.psi = IntensityFn::clipped_affine(0.5, 1.0, 2.0, 0.1);
    Grid1D g;
    g.delta = 2e-3;
    g.T = 4.0;
    g.s_max = required_s_max(m.initial, g.T);
    auto [curve, dg] = mean_intensity_bounded(m, g);

    // expected events per copy is the integral of lambda
    double expect = (curve.lambda.sum() - 0.5 * (curve.lambda(0) + curve.lambda(g.K()))) *
                    g.delta;
    const int copies = 2000;
    double total = 0.0;
    for (int i = 0; i < copies; ++i) {
        Rng r(mix_keys(404u, static_cast<std::uint64_t>(i)));
        double t0 = -m.initial.sample_age(r);
        GrainStream s(505, static_cast<std::uint64_t>(i));
        PointPath p = simulate_limit_process(curve, m.psi, t0, s, g.T);
        total += static_cast<double>(p.events.size());
        for (std::size_t k = 1; k < p.events.size(); ++k)
            CHECK(p.events[k] - p.events[k - 1] >= 0.1);
    }
    double se = std::sqrt(expect * copies);  // counts are roughly Poisson
    CHECK(std::abs(total - expect * copies) < 4.0 * se);
}

TEST_CASE("limit sampler matches the particle run exactly for constant rates") {
    ModelSpec m = h2_model();
    m.psi = IntensityFn::constant(1.3);
    const int n = 8;
    const double theta = 6.0;
    const std::uint64_t seed = 15;
    auto prun = simulate_adrhp(m, n, theta, seed);

    Grid1D g{1e-2, theta, 1e-2};
    auto curve = mean_intensity_age_independent(m, g);
    auto t0 = sample_initial_pasts(m.initial, n, seed);
    for (int i = 0; i < n; ++i) {
        GrainStream s(stream_seed(seed), i);
        PointPath p = simulate_limit_process(curve, m.psi, t0[i], s, theta);
        REQUIRE(p.events.size() == prun.paths[i].events.size());
        for (std::size_t k = 0; k < p.events.size(); ++k)
            CHECK(p.events[k] == prun.paths[i].events[k]);
    }
}

TEST_CASE("limit sampler with an unbounded rate audits its envelope") {
    ModelSpec m = h2_model();
    Grid1D g{1e-3, 4.0, 1e-3};
    auto curve = mean_intensity_age_independent(m, g);
    for (int i = 0; i < 50; ++i) {
        GrainStream s(606, static_cast<std::uint64_t>(i));
        Rng r(mix_keys(607u, static_cast<std::uint64_t>(i)));
        // must not throw EnvelopeViolation
        PointPath p = simulate_limit_process(curve, m.psi, -m.initial.sample_age(r), s, 4.0);
        CHECK(p.theta == 4.0);
    }
}
