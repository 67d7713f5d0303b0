#include "adrhp/particle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "adrhp/errors.hpp"
#include "adrhp/thinning.hpp"

namespace adrhp {
namespace {

// Interaction argument of particle i at time t, with history frozen at the
// last accepted event. Exponential kernels get an O(1) decaying aggregate
// (past influence folded in at t=0); other families fall back to summing
// over events.
class InteractionState {
  public:
    InteractionState(const ModelSpec& model, const Eigen::MatrixXd& weights,
                     const std::vector<double>& t0, const std::vector<PointPath>& paths)
        : model_(model),
          weights_(weights),
          abs_weights_(weights.cwiseAbs()),
          t0_(t0),
          paths_(paths),
          n_(static_cast<int>(t0.size())),
          exp_fast_(model.kernel.base.is_exponential()),
          alpha_(model.kernel.base.alpha),
          beta_(model.kernel.base.beta) {
        if (exp_fast_) {
            d_ = Eigen::VectorXd::Zero(n_);
            dabs_ = Eigen::VectorXd::Zero(n_);
            if (model_.past.mode != PastInfluenceLaw::Mode::Zero &&
                model_.kernel.base.family == KernelSpec::Family::Exponential) {
                for (int j = 0; j < n_; ++j) {
                    // F_ij(t) = w_ij * alpha * exp(-beta (t - T0)), same decay
                    // as an event placed at T0 <= 0
                    double origin = model_.past.mode == PastInfluenceLaw::Mode::HawkesPast
                                        ? t0_[j]
                                        : model_.past.tau;
                    double jump = alpha_ * std::exp(beta_ * origin);
                    d_ += weights_.col(j) * jump;
                    dabs_ += abs_weights_.col(j) * std::abs(jump);
                }
            }
        }
    }

    // signed (1/n-scaled) argument x_i(t), valid for t > every stored event
    double x_at(int i, double t) const {
        if (exp_fast_) return d_(i) * std::exp(-beta_ * (t - anchor_)) / n_;
        double s = 0.0;
        for (int j = 0; j < n_; ++j) {
            double wj = weights_(i, j);
            if (wj != 0.0) {
                for (double ev : paths_[j].events) s += wj * model_.kernel.base.eval(t - ev);
            }
            s += model_.past.eval(weights_(i, j), model_.kernel.base, t0_[j], t);
        }
        return s / n_;
    }

    // absolute-envelope counterpart; non-increasing between events when the
    // kernel envelope is
    double xabs_at(int i, double t) const {
        if (exp_fast_) return dabs_(i) * std::exp(-beta_ * (t - anchor_)) / n_;
        double s = 0.0;
        for (int j = 0; j < n_; ++j) {
            double wj = abs_weights_(i, j);
            if (wj != 0.0) {
                for (double ev : paths_[j].events) s += wj * model_.kernel.base.envelope(t - ev);
            }
            s += model_.past.envelope(abs_weights_(i, j), model_.kernel.base, t0_[j], t);
        }
        return s / n_;
    }

    void on_event(int j, double t) {
        if (exp_fast_) {
            double decay = std::exp(-beta_ * (t - anchor_));
            d_ *= decay;
            dabs_ *= decay;
            d_ += weights_.col(j) * alpha_;
            dabs_ += abs_weights_.col(j) * std::abs(alpha_);
            anchor_ = t;
        }
        // generic path reads the event lists directly
    }

  private:
    const ModelSpec& model_;
    Eigen::MatrixXd weights_;
    Eigen::MatrixXd abs_weights_;
    const std::vector<double>& t0_;
    const std::vector<PointPath>& paths_;
    int n_;
    bool exp_fast_;
    double alpha_, beta_;
    double anchor_ = 0.0;
    Eigen::VectorXd d_, dabs_;
};

enum class Mode { Adrhp, DominatingLinear };

ParticleSystemRun run_system(const ModelSpec& model, int n, double theta, std::uint64_t seed,
                             Mode mode) {
    if (n < 1) throw std::domain_error("particle system needs n >= 1");
    if (mode == Mode::Adrhp) require_simulable(model);
    if (mode == Mode::DominatingLinear && model.psi.lip() > 0.0 &&
        !model.kernel.base.envelope_nonincreasing())
        throw HypothesisError("dominating linear process needs a non-increasing kernel envelope");

    ParticleSystemRun run;
    run.n = n;
    run.theta = theta;
    run.seed = seed;
    run.base = model.kernel.base;
    run.weights = sample_interaction_matrix(model.kernel, n, weight_seed(seed)).weights;
    if (!model.self_interaction) run.weights.diagonal().setZero();

    std::vector<double> t0 = sample_initial_pasts(model.initial, n, seed);
    run.paths.resize(n);
    for (int i = 0; i < n; ++i) {
        run.paths[i].past = t0[i];
        run.paths[i].theta = theta;
    }

    std::vector<GrainStream> streams;
    streams.reserve(n);
    for (int i = 0; i < n; ++i) streams.emplace_back(stream_seed(seed), i);

    InteractionState state(model, run.weights, t0, run.paths);
    std::vector<double> last(t0);  // last point of each particle

    const double lip = model.psi.lip();
    const double phi0 = model.psi.eval_phi(0.0);  // sup_s Psi(s, 0)
    const double psi_sup = model.psi.sup_bound();

    double t_cur = 0.0;
    for (;;) {
        // per-particle dominating level on (t_cur, next event]
        double best_t = theta;
        int best_i = -1;
        double best_lam = 0.0, best_env = 0.0;
        for (int i = 0; i < n; ++i) {
            double level;
            if (mode == Mode::DominatingLinear)
                level = phi0 + lip * state.xabs_at(i, t_cur);
            else if (model.psi.bounded())
                level = psi_sup;
            else
                level = model.psi.eval_phi(state.xabs_at(i, t_cur));
            if (level <= 0.0) continue;
            auto env = PiecewiseConstantEnvelope::constant(level);
            auto lam_fn = [&](double t) {
                if (mode == Mode::DominatingLinear) return phi0 + lip * state.xabs_at(i, t);
                return model.psi.eval(t - last[i], state.x_at(i, t));
            };
            // scanning only up to the best candidate so far keeps the scan
            // cost per accepted event near-linear; ties resolve to the
            // lowest stream id by the strict comparison
            auto g = thin_next_event(streams[i], t_cur, best_t, env, lam_fn);
            if (g && g->t < best_t) {
                best_t = g->t;
                best_i = i;
                best_lam = lam_fn(g->t);
                best_env = level;
            }
        }
        if (best_i < 0) break;
        run.paths[best_i].events.push_back(best_t);
        run.audit.push_back({best_t, best_i, best_lam, best_env});
        state.on_event(best_i, best_t);
        last[best_i] = best_t;
        t_cur = best_t;
        if (run.total_events() > model.event_cap)
            throw ExplosionGuardError("event cap " + std::to_string(model.event_cap) +
                                      " exceeded; the stability hypothesis likely fails");
    }
    return run;
}

}  // namespace

ParticleSystemRun simulate_adrhp(const ModelSpec& model, int n, double theta,
                                 std::uint64_t seed) {
    return run_system(model, n, theta, seed, Mode::Adrhp);
}

ParticleSystemRun simulate_dominating_linear(const ModelSpec& model, int n, double theta,
                                             std::uint64_t seed) {
    return run_system(model, n, theta, seed, Mode::DominatingLinear);
}

}  // namespace adrhp
