#include "adrhp/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "adrhp/errors.hpp"
#include "adrhp/stats.hpp"

namespace adrhp {

CoupledRun build_coupled_run(const ModelSpec& model, int n, double theta, std::uint64_t seed,
                             const MeanIntensityCurve& curve) {
    AssumptionReport rep = check_assumptions(model, theta);
    if (!rep.h1 && !rep.h2)
        throw HypothesisError(
            "model satisfies neither regime: need a bounded intensity with a density initial "
            "law, or an age-independent intensity");
    CoupledRun run;
    run.n = n;
    run.theta = theta;
    run.particles = simulate_adrhp(model, n, theta, seed);
    std::vector<double> t0 = sample_initial_pasts(model.initial, n, seed);
    run.limit_paths.reserve(n);
    for (int i = 0; i < n; ++i) {
        GrainStream stream(stream_seed(seed), i);
        run.limit_paths.push_back(
            simulate_limit_process(curve, model.psi, t0[i], stream, theta));
    }
    return run;
}

int delta_count(const PointPath& a, const PointPath& b, double theta) {
    std::size_t i = 0, j = 0;
    int diff = 0;
    while (i < a.events.size() && j < b.events.size()) {
        if (a.events[i] > theta || b.events[j] > theta) break;
        if (a.events[i] == b.events[j]) {
            ++i;
            ++j;
        } else if (a.events[i] < b.events[j]) {
            ++diff;
            ++i;
        } else {
            ++diff;
            ++j;
        }
    }
    for (; i < a.events.size() && a.events[i] <= theta; ++i) ++diff;
    for (; j < b.events.size() && b.events[j] <= theta; ++j) ++diff;
    return diff;
}

double sup_age_gap(const PointPath& a, const PointPath& b, double theta) {
    if (a.past != b.past)
        throw std::logic_error("sup_age_gap: paths do not share the same past point");
    // both ages grow at unit speed between events, so the gap is constant on
    // each segment of the merged event sequence
    std::vector<double> merged;
    for (double t : a.events)
        if (t <= theta) merged.push_back(t);
    for (double t : b.events)
        if (t <= theta) merged.push_back(t);
    std::sort(merged.begin(), merged.end());
    double last_a = a.past, last_b = b.past, gap = 0.0;
    std::size_t ia = 0, ib = 0;
    for (double t : merged) {
        gap = std::max(gap, std::abs(last_a - last_b));
        while (ia < a.events.size() && a.events[ia] <= t) last_a = a.events[ia++];
        while (ib < b.events.size() && b.events[ib] <= t) last_b = b.events[ib++];
    }
    gap = std::max(gap, std::abs(last_a - last_b));
    return gap;
}

double w1_empirical_vs_density(const std::vector<double>& samples,
                               const Eigen::VectorXd& density, double delta) {
    if (samples.empty()) throw std::domain_error("w1: empty sample set");
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    const int J = static_cast<int>(density.size()) - 1;
    const double s_top = std::max(J * delta, sorted.back());
    const int m = static_cast<int>(std::ceil(s_top / delta));

    double w1 = 0.0, cdf_d = 0.0;
    std::size_t idx = 0;
    for (int j = 0; j <= m; ++j) {
        double s = j * delta;
        if (j > 0 && j <= J) cdf_d += 0.5 * (density(j - 1) + density(j)) * delta;
        double fd = std::min(1.0, cdf_d);
        if (j > J) fd = 1.0;
        while (idx < sorted.size() && sorted[idx] <= s) ++idx;
        double fe = static_cast<double>(idx) / n;
        w1 += std::abs(fe - fd) * delta;
    }
    return w1;
}

RateFit fit_rate(const std::vector<int>& ns, const std::vector<double>& values) {
    if (ns.size() != values.size() || ns.size() < 3)
        throw std::domain_error("fit_rate: need at least 3 (n, value) pairs");
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] <= 0.0)
            throw std::domain_error("fit_rate: nonpositive value at n=" + std::to_string(ns[i]));
    const int m = static_cast<int>(ns.size());
    Eigen::MatrixXd A(m, 2);
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i) {
        A(i, 0) = std::log(static_cast<double>(ns[i]));
        A(i, 1) = 1.0;
        y(i) = std::log(values[i]);
    }
    Eigen::Vector2d coef = A.colPivHouseholderQr().solve(y);
    Eigen::VectorXd r = y - A * coef;
    RateFit fit;
    fit.slope = coef(0);
    fit.intercept = coef(1);
    fit.residual = std::sqrt(r.squaredNorm() / m);
    if (m > 2) {
        double xbar = A.col(0).mean();
        double sxx = (A.col(0).array() - xbar).square().sum();
        fit.slope_se = std::sqrt(r.squaredNorm() / (m - 2) / sxx);
    }
    return fit;
}

BetaBound theoretical_beta(const ModelSpec& model, double theta) {
    BetaBound out;
    const double lip = model.psi.lip();
    if (lip == 0.0) {
        out.beta = 0.0;
        out.bound = 0.0;
        return out;
    }
    const double m1 = model.kernel.envelope_l1();
    const double m2 = model.kernel.envelope_l2();
    const double alpha = lip * m1;
    if (!(alpha < 1.0)) {
        out.reason = "Lip * ||M||_1 = " + std::to_string(alpha) + " >= 1";
        return out;
    }
    if (!std::isfinite(m2)) {
        out.reason = "kernel envelope not square integrable";
        return out;
    }
    // sup of the past-influence mean and variance on [0, theta]
    double f0_sup = 0.0, v_sup = 0.0;
    for (int k = 0; k <= 200; ++k) {
        double t = theta * k / 200.0;
        f0_sup = std::max(f0_sup, std::abs(model.past.mean(model.kernel, model.initial, t)));
        v_sup = std::max(v_sup, model.past.variance(model.kernel, model.initial, t));
    }
    if (!std::isfinite(f0_sup) || !std::isfinite(v_sup)) {
        out.reason = "past-influence moments not bounded on [0, theta]";
        return out;
    }

    if (model.psi.age_independent()) {
        // uniform mean-intensity bound, then the stationary-regime constant
        double lam_sup = (model.psi.eval_phi(0.0) + lip * f0_sup) / (1.0 - alpha);
        out.beta = lip / (1.0 - alpha) * (m2 * std::sqrt(lam_sup) + m1 * lam_sup + std::sqrt(v_sup));
        out.bound = out.beta * theta;
        return out;
    }
    if (model.psi.bounded()) {
        double psi_sup = model.psi.sup_bound();
        if (!(alpha + psi_sup * theta < 1.0)) {
            out.reason = "theta = " + std::to_string(theta) + " not below (1 - alpha)/||Psi|| = " +
                         std::to_string((1.0 - alpha) / psi_sup);
            return out;
        }
        out.beta = lip / (1.0 - (alpha + psi_sup * theta)) *
                   (m2 * std::sqrt(psi_sup) + std::sqrt(3.0) * m1 * psi_sup + std::sqrt(v_sup));
        out.bound = out.beta * theta;
        return out;
    }
    out.reason = "model satisfies neither regime";
    return out;
}

SweepResult sweep(const ModelSpec& model, const MeanIntensityCurve& curve,
                  const std::vector<int>& ns, double theta, std::uint64_t seed,
                  int min_replicas, int max_replicas, double se_frac, int jobs) {
    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 0) jobs = 1;

    SweepResult out;
    out.beta = theoretical_beta(model, theta);

    for (int n : ns) {
        std::vector<SweepRow> rows;
        auto run_replicas = [&](int from, int to) {
            rows.resize(to);
            std::atomic<int> next(from);
            auto worker = [&]() {
                for (;;) {
                    int r = next.fetch_add(1);
                    if (r >= to) break;
                    std::uint64_t rseed = mix_keys(seed, static_cast<std::uint64_t>(n),
                                                   static_cast<std::uint64_t>(r));
                    CoupledRun cr = build_coupled_run(model, n, theta, rseed, curve);
                    double d = 0.0, g = 0.0;
                    for (int i = 0; i < n; ++i) {
                        d += delta_count(cr.particles.paths[i], cr.limit_paths[i], theta);
                        g += sup_age_gap(cr.particles.paths[i], cr.limit_paths[i], theta);
                    }
                    rows[r] = {n, r, d / n, g / n};
                }
            };
            std::vector<std::thread> pool;
            for (int w = 0; w < std::min(jobs, to - from); ++w) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        };

        int r = min_replicas;
        run_replicas(0, r);
        for (;;) {
            std::vector<double> d;
            for (int i = 0; i < r; ++i) d.push_back(rows[i].delta_n);
            double mean = mean_of(d), se = standard_error(d);
            if (mean == 0.0 || se <= se_frac * mean || r >= max_replicas) {
                if (mean > 0.0 && se > se_frac * mean) out.underpowered = true;
                SweepLevel lvl;
                lvl.n = n;
                lvl.replicas = r;
                lvl.delta_mean = mean;
                lvl.delta_se = se;
                double g = 0.0;
                for (int i = 0; i < r; ++i) g += rows[i].age_gap;
                lvl.age_gap_mean = g / r;
                out.levels.push_back(lvl);
                break;
            }
            int grow = std::min(max_replicas, 2 * r);
            run_replicas(r, grow);
            r = grow;
        }
        out.rows.insert(out.rows.end(), rows.begin(), rows.end());
    }

    std::vector<int> fit_ns;
    std::vector<double> fit_vals;
    for (const auto& lvl : out.levels) {
        if (lvl.delta_mean > 0.0) {
            fit_ns.push_back(lvl.n);
            fit_vals.push_back(lvl.delta_mean);
        }
    }
    if (fit_ns.size() >= 3) out.fit = fit_rate(fit_ns, fit_vals);
    return out;
}

}  // namespace adrhp
