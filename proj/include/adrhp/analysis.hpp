#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "adrhp/limit.hpp"
#include "adrhp/model.hpp"
#include "adrhp/particle.hpp"

namespace adrhp {

/// The coupled pair: the n-particle run and n limit copies sharing its
/// pasts and grain streams.
struct CoupledRun {
    int n = 0;
    double theta = 0.0;
    ParticleSystemRun particles;
    std::vector<PointPath> limit_paths;
};

CoupledRun build_coupled_run(const ModelSpec& model, int n, double theta, std::uint64_t seed,
                             const MeanIntensityCurve& curve);

// Symmetric-difference count of the two event sets on (0, theta]. Exact
// float equality is the matching rule: shared grains make common events
// bit-identical.
int delta_count(const PointPath& a, const PointPath& b, double theta);

// sup over [0, theta] of the predictable age gap; piecewise constant
// between events, so the sup is an exact scan over segments.
double sup_age_gap(const PointPath& a, const PointPath& b, double theta);

// W1 between an empirical sample and a density given on a uniform age grid
// of step delta (L1 distance of the CDFs).
double w1_empirical_vs_density(const std::vector<double>& samples,
                               const Eigen::VectorXd& density, double delta);

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS residual of the log-log fit
    double slope_se = 0.0;
};

RateFit fit_rate(const std::vector<int>& ns, const std::vector<double>& values);

struct BetaBound {
    std::optional<double> bound;  // beta * theta when available
    double beta = 0.0;
    std::string reason;  // why no bound, when empty optional
};

// Explicit constant of the linear-in-theta convergence bound, evaluated in
// whichever regime the model satisfies; none with a reason otherwise.
BetaBound theoretical_beta(const ModelSpec& model, double theta);

struct SweepRow {
    int n = 0;
    int replica = 0;
    double delta_n = 0.0;   // mean over particles of the pair difference
    double age_gap = 0.0;   // mean over particles of the sup age gap
};

struct SweepLevel {
    int n = 0;
    int replicas = 0;
    double delta_mean = 0.0;
    double delta_se = 0.0;
    double age_gap_mean = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<SweepLevel> levels;
    RateFit fit;
    BetaBound beta;
    bool underpowered = false;  // SE target not reached within the replica cap
};

/// Coupled runs over an n-ladder with replica counts grown until the SE of
/// mean delta_n drops below se_frac of its value (or the cap is hit), then a
/// log-log rate fit.
SweepResult sweep(const ModelSpec& model, const MeanIntensityCurve& curve,
                  const std::vector<int>& ns, double theta, std::uint64_t seed,
                  int min_replicas = 16, int max_replicas = 512, double se_frac = 0.1,
                  int jobs = 0);

}  // namespace adrhp
