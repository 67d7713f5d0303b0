#include "adrhp/limit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adrhp/errors.hpp"
#include "adrhp/thinning.hpp"

namespace adrhp {

Eigen::VectorXd past_mean_on_grid(const ModelSpec& model, const Grid1D& grid) {
    const int K = grid.K();
    Eigen::VectorXd f0 = Eigen::VectorXd::Zero(K + 1);
    if (model.past.mode != PastInfluenceLaw::Mode::Zero)
        for (int k = 0; k <= K; ++k)
            f0(k) = model.past.mean(model.kernel, model.initial, grid.t(k));
    return f0;
}

std::pair<MeanIntensityCurve, DensityGrid> mean_intensity_bounded(
    const ModelSpec& model, const Grid1D& grid, const std::vector<double>& snapshot_times) {
    if (!model.psi.bounded())
        throw HypothesisError("bounded-intensity pipeline requires a finite sup bound");
    auto [u_in, renorm] = grid_initial_density(model.initial, grid);
    Eigen::VectorXd f0 = past_mean_on_grid(model, grid);
    auto h = [&](double t) { return model.kernel.mean_kernel(t); };
    DensityGrid dg = solve_pps(model.psi, h, f0, u_in, grid, snapshot_times);
    dg.renormalization = renorm;

    MeanIntensityCurve c;
    c.delta = grid.delta;
    c.lambda = dg.u0;
    c.gamma = dg.X + f0;
    c.provenance = MeanIntensityCurve::Provenance::FromPDE;
    return {std::move(c), std::move(dg)};
}

MeanIntensityCurve mean_intensity_age_independent(const ModelSpec& model, const Grid1D& grid,
                                                  double fp_tol, int max_iter) {
    if (!model.psi.age_independent())
        throw HypothesisError("age-independent pipeline requires refractory delta = 0");
    const int K = grid.K();
    const double dt = grid.delta;
    Eigen::VectorXd h_arr(K + 1);
    for (int k = 0; k <= K; ++k) h_arr(k) = model.kernel.mean_kernel(grid.t(k));
    Eigen::VectorXd f0 = past_mean_on_grid(model, grid);

    MeanIntensityCurve c;
    c.delta = dt;
    c.lambda.resize(K + 1);
    c.gamma.resize(K + 1);
    c.provenance = MeanIntensityCurve::Provenance::FromVolterra;

    c.gamma(0) = f0(0);
    c.lambda(0) = model.psi.eval_phi(f0(0));
    const double self_w = 0.5 * dt * h_arr(0);  // implicit trapezoid weight
    for (int k = 1; k <= K; ++k) {
        double hist = 0.5 * h_arr(k) * c.lambda(0);
        for (int m = 1; m < k; ++m) hist += h_arr(k - m) * c.lambda(m);
        hist *= dt;
        double lam = c.lambda(k - 1);
        bool ok = false;
        for (int it = 0; it < max_iter; ++it) {
            double g = hist + self_w * lam + f0(k);
            double lam_new = model.psi.eval_phi(g);
            if (std::abs(lam_new - lam) < fp_tol) {
                lam = lam_new;
                ok = true;
                break;
            }
            lam = lam_new;
        }
        if (!ok) {
            double stab = model.psi.lip() * model.kernel.envelope_l1();
            throw ConvergenceError(
                "Volterra step fixed point diverged at t=" + std::to_string(grid.t(k)) +
                (stab >= 1.0 ? " (Lip * ||h||_1 = " + std::to_string(stab) +
                                   " >= 1: past the stability threshold)"
                             : ""));
        }
        c.lambda(k) = lam;
        c.gamma(k) = hist + self_w * lam + f0(k);
    }
    return c;
}

PointPath simulate_limit_process(const MeanIntensityCurve& curve, const IntensityFn& psi,
                                 double t0, GrainStream& stream, double theta) {
    if (curve.t_max() < theta - 1e-12)
        throw std::domain_error("mean intensity curve does not cover the horizon");
    PointPath path;
    path.past = t0;
    path.theta = theta;

    PiecewiseConstantEnvelope env;
    if (psi.bounded()) {
        env = PiecewiseConstantEnvelope::constant(psi.sup_bound());
    } else {
        if (!psi.phi_nondecreasing())
            throw HypothesisError("unbounded limit sampler needs a nondecreasing rate function");
        // coarse segments, each dominated by Phi at the local max of the
        // piecewise-linear gamma curve (so by Phi at the covering node max)
        const double seg_len = 0.25;
        const int nseg = std::max(1, static_cast<int>(std::ceil(theta / seg_len)));
        for (int k = 0; k < nseg; ++k) {
            double a = k * seg_len, b = std::min(theta, (k + 1) * seg_len);
            int ja = static_cast<int>(std::floor(a / curve.delta));
            int jb = std::min<int>(curve.gamma.size() - 1,
                                   static_cast<int>(std::ceil(b / curve.delta)));
            double gmax = curve.gamma.segment(ja, jb - ja + 1).maxCoeff();
            env.times.push_back(a);
            env.levels.push_back(psi.eval_phi(gmax));
        }
    }

    double t_cur = 0.0, last = t0;
    auto lam = [&](double t) { return psi.eval(t - last, curve.gamma_at(t)); };
    for (;;) {
        auto g = thin_next_event(stream, t_cur, theta, env, lam);
        if (!g) break;
        path.events.push_back(g->t);
        last = g->t;
        t_cur = g->t;
        if (path.events.size() > 1000000)
            throw ExplosionGuardError("limit copy exceeded the event cap");
    }
    return path;
}

}  // namespace adrhp
