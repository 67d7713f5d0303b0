#pragma once

#include <cmath>
#include <stdexcept>

#include "adrhp/initial.hpp"
#include "adrhp/kernel.hpp"

namespace adrhp {

/// Influence of the pre-0 past on the positive-time intensity. Two
/// constructive modes plus Zero:
///   HawkesPast:     F_ij(t) = H_ij(t - T0_j)   (one past point per particle)
///   CommonStimulus: F_ij(t) = H_ij(t - tau), tau <= 0 fixed
struct PastInfluenceLaw {
    enum class Mode { HawkesPast, CommonStimulus, Zero };

    Mode mode = Mode::Zero;
    double tau = 0.0;  // CommonStimulus offset, <= 0

    static PastInfluenceLaw hawkes_past() { return {Mode::HawkesPast, 0.0}; }
    static PastInfluenceLaw common_stimulus(double tau) {
        if (tau > 0.0) throw std::invalid_argument("common stimulus time must be <= 0");
        return {Mode::CommonStimulus, tau};
    }
    static PastInfluenceLaw zero() { return {Mode::Zero, 0.0}; }

    // realized F_ij(t) for weight w and past point T0 of the source particle
    double eval(double w, const KernelSpec& base, double T0, double t) const {
        switch (mode) {
            case Mode::HawkesPast: return w * base.eval(t - T0);
            case Mode::CommonStimulus: return w * base.eval(t - tau);
            case Mode::Zero: return 0.0;
        }
        return 0.0;
    }

    // a.s. envelope |F_ij(t)| <= w_max * M(t - T0); non-increasing in t when
    // the kernel envelope is
    double envelope(double w_max, const KernelSpec& base, double T0, double t) const {
        switch (mode) {
            case Mode::HawkesPast: return w_max * base.envelope(t - T0);
            case Mode::CommonStimulus: return w_max * base.envelope(t - tau);
            case Mode::Zero: return 0.0;
        }
        return 0.0;
    }

    // m_{nu_F}(t) = E[F(t)], integrating the initial-age density. Quadrature
    // over the age variable (Simpson on a fine fixed grid, truncated tail).
    double mean(const RandomKernelLaw& law, const InitialLaw& init, double t) const {
        switch (mode) {
            case Mode::Zero:
                return 0.0;
            case Mode::CommonStimulus:
                return law.weights.mean() * law.base.eval(t - tau);
            case Mode::HawkesPast:
                return law.weights.mean() * age_expect(init, [&](double a) { return law.base.eval(t + a); });
        }
        return 0.0;
    }

    // V_{nu_F}(t) = Var[F(t)]
    double variance(const RandomKernelLaw& law, const InitialLaw& init, double t) const {
        const double ew = law.weights.mean();
        const double ew2 = law.weights.second_moment();
        switch (mode) {
            case Mode::Zero:
                return 0.0;
            case Mode::CommonStimulus: {
                double h = law.base.eval(t - tau);
                return (ew2 - ew * ew) * h * h;
            }
            case Mode::HawkesPast: {
                double eh = age_expect(init, [&](double a) { return law.base.eval(t + a); });
                double eh2 = age_expect(init, [&](double a) {
                    double v = law.base.eval(t + a);
                    return v * v;
                });
                return ew2 * eh2 - ew * ew * eh * eh;
            }
        }
        return 0.0;
    }

    // m_{nu_F} continuity is inherited from the kernel; piecewise-constant
    // kernels break it under CommonStimulus (flagged by the validator)
    bool mean_continuous(const KernelSpec& base) const {
        if (mode == Mode::Zero) return true;
        if (base.family == KernelSpec::Family::PiecewiseConstant)
            return mode == Mode::HawkesPast;  // smoothing by the age density
        return true;
    }

  private:
    template <typename Fn>
    static double age_expect(const InitialLaw& init, Fn&& fn) {
        if (init.kind == InitialLaw::Kind::DiracAge) return fn(init.a0);
        double hi = init.age_bound();
        if (!std::isfinite(hi)) hi = 40.0 / init.rate;  // exp tail < 1e-17
        const int m = 4000;  // even
        const double dz = hi / m;
        double s = 0.0;
        for (int j = 0; j <= m; ++j) {
            double a = j * dz;
            double wgt = (j == 0 || j == m) ? 1.0 : (j % 2 ? 4.0 : 2.0);
            s += wgt * init.density(a) * fn(a);
        }
        return s * dz / 3.0;
    }
};

}  // namespace adrhp
