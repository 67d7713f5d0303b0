#pragma once

#include <Eigen/Dense>
#include <utility>

#include "adrhp/grain_stream.hpp"
#include "adrhp/model.hpp"
#include "adrhp/pde.hpp"
#include "adrhp/point_path.hpp"

namespace adrhp {

/// Mean intensity of the limit process on a uniform time grid, with the
/// deterministic drive gamma(t) = int_0^t m_H(t-z) lambda(z) dz + m_F(t)
/// the limit sampler evaluates.
struct MeanIntensityCurve {
    enum class Provenance { FromPDE, FromVolterra };

    double delta = 0.0;
    Eigen::VectorXd lambda;  // lambda_bar at t_k = k*delta
    Eigen::VectorXd gamma;   // gamma_bar at t_k
    Provenance provenance = Provenance::FromVolterra;

    double t_max() const { return delta * static_cast<double>(lambda.size() - 1); }

    double interp(const Eigen::VectorXd& v, double t) const {
        if (t <= 0.0) return v(0);
        double pos = t / delta;
        int k = static_cast<int>(pos);
        if (k >= v.size() - 1) return v(v.size() - 1);
        double frac = pos - k;
        return v(k) * (1.0 - frac) + v(k + 1) * frac;
    }
    double lambda_at(double t) const { return interp(lambda, t); }
    double gamma_at(double t) const { return interp(gamma, t); }
};

// mean past influence m_F on the time grid
Eigen::VectorXd past_mean_on_grid(const ModelSpec& model, const Grid1D& grid);

/// Bounded-intensity regime: lambda_bar(t) = u(t,0) from the nonlinear PDE.
/// Returns the curve together with the solved density grid (snapshots as
/// requested).
std::pair<MeanIntensityCurve, DensityGrid> mean_intensity_bounded(
    const ModelSpec& model, const Grid1D& grid,
    const std::vector<double>& snapshot_times = {});

/// Age-independent regime: forward Volterra solve of
/// lambda(t) = Phi(int_0^t m_H(t-z) lambda(z) dz + m_F(t)).
MeanIntensityCurve mean_intensity_age_independent(const ModelSpec& model, const Grid1D& grid,
                                                  double fp_tol = 1e-12, int max_iter = 100);

/// One copy of the limit process thinned against the supplied stream, with
/// the supplied past point: the coupling harness injects both so the copy
/// shares its randomness with particle i.
PointPath simulate_limit_process(const MeanIntensityCurve& curve, const IntensityFn& psi,
                                 double t0, GrainStream& stream, double theta);

}  // namespace adrhp
