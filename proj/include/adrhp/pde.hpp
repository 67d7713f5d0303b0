#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "adrhp/initial.hpp"
#include "adrhp/intensity.hpp"
#include "adrhp/kernel.hpp"
#include "adrhp/model.hpp"

namespace adrhp {

/// Shared time/age grid: unit-speed characteristics need dt = ds.
struct Grid1D {
    double delta = 1e-3;
    double T = 1.0;      // time horizon
    double s_max = 1.0;  // age cutoff, chosen so mass never reaches it

    int K() const { return static_cast<int>(std::lround(T / delta)); }
    int J() const { return static_cast<int>(std::lround(s_max / delta)); }
    double t(int k) const { return k * delta; }
    double s(int j) const { return j * delta; }
};

/// Marching result. The full (K+1) x (J+1) array is deliberately not stored
/// (it does not fit at the resolutions the experiments use); snapshots of
/// u(t, .) are recorded at requested times instead.
struct DensityGrid {
    Grid1D grid;
    Eigen::VectorXd u0;         // boundary trace u(t_k, 0), K+1
    Eigen::VectorXd X;          // convolution term, K+1 (zero for the linear solve)
    Eigen::VectorXd final_row;  // u(T, .), J+1
    std::vector<std::pair<double, Eigen::VectorXd>> snapshots;
    double mass_err_max = 0.0;  // max_k |trapezoid mass - 1|
    double u_min = 0.0;
    double u_max = 0.0;
    double top_mass_max = 0.0;     // largest density value seen at s_max
    double renormalization = 1.0;  // mass factor applied to the truncated u_in
};

// Age cutoff that keeps all mass strictly inside the grid: truncation point
// of u_in plus the horizon.
double required_s_max(const InitialLaw& init, double T);

// u_in sampled on the age grid, truncated at 1e-12 and renormalized to unit
// trapezoid mass; the applied factor is returned in the second slot.
std::pair<Eigen::VectorXd, double> grid_initial_density(const InitialLaw& init,
                                                        const Grid1D& grid);

/// Linear age-structured system with a given firing rate f(t,s): exact
/// transport along characteristics with a trapezoid integrating factor, and
/// an implicit trapezoid solve for the boundary trace.
DensityGrid solve_linear_pps(const std::function<double(double, double)>& f,
                             const Eigen::VectorXd& u_in, const Grid1D& grid,
                             const std::vector<double>& snapshot_times = {});

/// Nonlinear system: f(t,s) = Psi(s, X(t) + f0(t)) with the convolution
/// X(t) = int_0^t h(t-z) u(z,0) dz resolved by a per-step fixed point.
/// Requires a bounded Psi; h is the mean interaction kernel, f0 the mean
/// past influence on the time grid.
DensityGrid solve_pps(const IntensityFn& psi, const std::function<double(double)>& h,
                      const Eigen::VectorXd& f0, const Eigen::VectorXd& u_in,
                      const Grid1D& grid, const std::vector<double>& snapshot_times = {},
                      double fp_tol = 1e-10, int max_iter = 50);

}  // namespace adrhp
