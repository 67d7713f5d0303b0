#include "adrhp/pde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "adrhp/errors.hpp"

namespace adrhp {
namespace {

double trapezoid_mass(const Eigen::VectorXd& row, double delta) {
    double s = row.sum() - 0.5 * (row(0) + row(row.size() - 1));
    return s * delta;
}

// map requested snapshot times to grid indices (nearest node)
std::vector<std::pair<int, double>> snapshot_indices(const std::vector<double>& times,
                                                     const Grid1D& grid) {
    std::vector<std::pair<int, double>> out;
    for (double t : times) {
        int k = static_cast<int>(std::lround(t / grid.delta));
        if (k < 0 || k > grid.K()) throw std::domain_error("snapshot time outside grid");
        out.push_back({k, t});
    }
    return out;
}

struct StatTracker {
    double mass_err = 0.0, umin = 0.0, umax = 0.0, top = 0.0;
    void observe(const Eigen::VectorXd& row, double delta) {
        mass_err = std::max(mass_err, std::abs(trapezoid_mass(row, delta) - 1.0));
        umin = std::min(umin, row.minCoeff());
        umax = std::max(umax, row.maxCoeff());
        top = std::max(top, std::abs(row(row.size() - 1)));
    }
};

}  // namespace

double required_s_max(const InitialLaw& init, double T) {
    double support;
    switch (init.kind) {
        case InitialLaw::Kind::ExponentialAge:
            // u_in(s) = r exp(-r s) < 1e-12
            support = std::log(init.rate / 1e-12) / init.rate;
            break;
        case InitialLaw::Kind::UniformAge:
            support = init.upper;
            break;
        default:
            throw HypothesisError("PDE pipeline needs an initial age with a bounded density");
    }
    return support + T;
}

std::pair<Eigen::VectorXd, double> grid_initial_density(const InitialLaw& init,
                                                        const Grid1D& grid) {
    if (!init.has_bounded_density())
        throw HypothesisError("PDE pipeline needs an initial age with a bounded density");
    const int J = grid.J();
    Eigen::VectorXd u(J + 1);
    for (int j = 0; j <= J; ++j) {
        double v = init.density(grid.s(j));
        u(j) = v < 1e-12 ? 0.0 : v;
    }
    double mass = trapezoid_mass(u, grid.delta);
    if (mass <= 0.0) throw std::domain_error("initial density has no mass on the grid");
    u /= mass;
    return {u, 1.0 / mass};
}

DensityGrid solve_linear_pps(const std::function<double(double, double)>& f,
                             const Eigen::VectorXd& u_in, const Grid1D& grid,
                             const std::vector<double>& snapshot_times) {
    const int K = grid.K(), J = grid.J();
    const double dt = grid.delta;
    if (u_in.size() != J + 1) throw std::domain_error("u_in size does not match the grid");
    if (u_in.minCoeff() < 0.0) throw std::domain_error("negative initial density");

    DensityGrid out;
    out.grid = grid;
    out.u0.resize(K + 1);
    out.X = Eigen::VectorXd::Zero(K + 1);
    auto snaps = snapshot_indices(snapshot_times, grid);

    Eigen::VectorXd row = u_in, next(J + 1);
    StatTracker stats;
    stats.observe(row, dt);
    for (auto& [k, t] : snaps)
        if (k == 0) out.snapshots.push_back({t, row});

    // boundary trace at t=0 is the firing integral of the initial density
    {
        double s = 0.0;
        for (int j = 0; j <= J; ++j) {
            double w = (j == 0 || j == J) ? 0.5 : 1.0;
            s += w * f(0.0, grid.s(j)) * row(j);
        }
        out.u0(0) = s * dt;
    }

    for (int k = 0; k < K; ++k) {
        const double t0 = grid.t(k), t1 = grid.t(k + 1);
        // transport: u(t1, s_{j+1}) = u(t0, s_j) * exp(-int f along the line)
        for (int j = 0; j < J; ++j) {
            double a = f(t0, grid.s(j)), b = f(t1, grid.s(j + 1));
            if (!std::isfinite(a) || !std::isfinite(b))
                throw std::domain_error("firing rate not finite on the grid");
            next(j + 1) = row(j) * std::exp(-0.5 * dt * (a + b));
        }
        // implicit trapezoid for u(t1, 0) = int f(t1, s) u(t1, s) ds
        double rhs = 0.0;
        for (int j = 1; j <= J; ++j) {
            double w = (j == J) ? 0.5 : 1.0;
            rhs += w * f(t1, grid.s(j)) * next(j);
        }
        rhs *= dt;
        double denom = 1.0 - 0.5 * dt * f(t1, 0.0);
        if (denom <= 0.0)
            throw std::domain_error("boundary solve degenerate: f(t,0) too large for this step");
        next(0) = rhs / denom;
        out.u0(k + 1) = next(0);
        row.swap(next);
        stats.observe(row, dt);
        for (auto& [ks, ts] : snaps)
            if (ks == k + 1) out.snapshots.push_back({ts, row});
    }
    out.final_row = row;
    out.mass_err_max = stats.mass_err;
    out.u_min = stats.umin;
    out.u_max = stats.umax;
    out.top_mass_max = stats.top;
    return out;
}

DensityGrid solve_pps(const IntensityFn& psi, const std::function<double(double)>& h,
                      const Eigen::VectorXd& f0, const Eigen::VectorXd& u_in,
                      const Grid1D& grid, const std::vector<double>& snapshot_times,
                      double fp_tol, int max_iter) {
    if (!psi.bounded())
        throw HypothesisError(
            "solve_pps requires a bounded intensity; use the age-independent pipeline instead");
    const int K = grid.K(), J = grid.J();
    const double dt = grid.delta;
    if (u_in.size() != J + 1) throw std::domain_error("u_in size does not match the grid");
    if (f0.size() != K + 1) throw std::domain_error("f0 size does not match the grid");
    if (u_in.minCoeff() < 0.0) throw std::domain_error("negative initial density");

    // first age index where the refractory mask opens: s_j >= delta
    const int jd = std::min<int>(
        J, static_cast<int>(std::ceil(psi.refractory_delta / dt - 1e-9)));

    DensityGrid out;
    out.grid = grid;
    out.u0.resize(K + 1);
    out.X.resize(K + 1);
    auto snaps = snapshot_indices(snapshot_times, grid);

    Eigen::VectorXd h_arr(K + 1);
    for (int k = 0; k <= K; ++k) h_arr(k) = h(grid.t(k));

    // trapezoid of u over the unmasked ages {j >= jd}
    auto masked_integral = [&](const Eigen::VectorXd& row) {
        double s = row.segment(jd, J + 1 - jd).sum() - 0.5 * row(J);
        if (jd == 0) s -= 0.5 * row(0);
        return s * dt;
    };

    Eigen::VectorXd row = u_in, next(J + 1);
    StatTracker stats;
    stats.observe(row, dt);
    for (auto& [k, t] : snaps)
        if (k == 0) out.snapshots.push_back({t, row});

    out.X(0) = 0.0;
    double phi_prev = psi.eval_phi(f0(0));
    out.u0(0) = phi_prev * masked_integral(row);

    for (int k = 0; k < K; ++k) {
        double x_guess = out.X(k);
        double u0_new = 0.0, phi_new = 0.0;
        bool converged = false;
        // convolution contribution of the already-known trace
        double conv_hist = 0.5 * h_arr(k + 1) * out.u0(0);
        for (int m = 1; m <= k; ++m) conv_hist += h_arr(k + 1 - m) * out.u0(m);
        for (int it = 0; it < max_iter; ++it) {
            phi_new = psi.eval_phi(x_guess + f0(k + 1));
            // transport with the separable rate phi(t) * 1{s >= delta}:
            // the factor is constant on each mask zone
            const double full = std::exp(-0.5 * dt * (phi_prev + phi_new));
            const double half = std::exp(-0.5 * dt * phi_new);
            next.segment(1, J) = row.head(J);
            if (jd == 0) {
                next.segment(1, J) *= full;
            } else {
                // characteristics fully below the mask (target index < jd)
                // carry no decay; the one entering the open zone sees only
                // the new endpoint
                next(jd) *= half;
                if (jd + 1 <= J) next.segment(jd + 1, J - jd) *= full;
            }
            // boundary trapezoid over the open ages, implicit in its own
            // j = 0 term when the mask starts at zero
            double rhs, denom;
            if (jd == 0) {
                rhs = phi_new * (next.segment(1, J).sum() - 0.5 * next(J)) * dt;
                denom = 1.0 - 0.5 * dt * phi_new;
            } else {
                rhs = phi_new * (next.segment(jd, J + 1 - jd).sum() - 0.5 * next(J)) * dt;
                denom = 1.0;
            }
            u0_new = rhs / denom;
            double x_new = dt * (conv_hist + 0.5 * h_arr(0) * u0_new);
            if (std::abs(x_new - x_guess) < fp_tol) {
                x_guess = x_new;
                converged = true;
                break;
            }
            x_guess = x_new;
        }
        if (!converged)
            throw ConvergenceError("per-step fixed point for X did not reach tolerance at t=" +
                                   std::to_string(grid.t(k + 1)));
        next(0) = u0_new;
        out.u0(k + 1) = u0_new;
        out.X(k + 1) = x_guess;
        phi_prev = phi_new;
        row.swap(next);
        stats.observe(row, dt);
        for (auto& [ks, ts] : snaps)
            if (ks == k + 1) out.snapshots.push_back({ts, row});
    }
    out.final_row = row;
    out.mass_err_max = stats.mass_err;
    out.u_min = stats.umin;
    out.u_max = stats.umax;
    out.top_mass_max = stats.top;
    return out;
}

}  // namespace adrhp
