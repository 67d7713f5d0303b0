#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace adrhp {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Firing rate Psi(s, x) = Phi(x) * 1{s >= delta} with declared Lipschitz
/// constant in x and sup bound.
struct IntensityFn {
    enum class Phi { Affine, ClippedAffine, Sigmoid, Constant };

    Phi phi = Phi::Constant;
    double mu = 0.0;      // Affine/ClippedAffine offset, Constant value
    double a = 0.0;       // Affine slope
    double cap = kInf;    // ClippedAffine cap
    double scale = 1.0;   // Sigmoid amplitude
    double gain = 1.0;    // Sigmoid steepness
    double center = 0.0;  // Sigmoid midpoint
    double refractory_delta = 0.0;

    static IntensityFn affine(double mu, double a, double delta = 0.0) {
        IntensityFn f;
        f.phi = Phi::Affine;
        f.mu = mu;
        f.a = a;
        f.refractory_delta = delta;
        return f;
    }
    static IntensityFn clipped_affine(double mu, double a, double cap, double delta = 0.0) {
        IntensityFn f;
        f.phi = Phi::ClippedAffine;
        f.mu = mu;
        f.a = a;
        f.cap = cap;
        f.refractory_delta = delta;
        return f;
    }
    static IntensityFn sigmoid(double scale, double gain, double center, double delta = 0.0) {
        IntensityFn f;
        f.phi = Phi::Sigmoid;
        f.scale = scale;
        f.gain = gain;
        f.center = center;
        f.refractory_delta = delta;
        return f;
    }
    static IntensityFn constant(double c, double delta = 0.0) {
        IntensityFn f;
        f.phi = Phi::Constant;
        f.mu = c;
        f.refractory_delta = delta;
        return f;
    }

    // Phi(x), the age-free part. Affine uses the positive-part convention
    // Phi(x) = max(0, mu + a x) so inhibition cannot push the rate negative.
    double eval_phi(double x) const {
        switch (phi) {
            case Phi::Affine:
                return std::max(0.0, mu + a * x);
            case Phi::ClippedAffine:
                return std::min(cap, std::max(0.0, mu + a * x));
            case Phi::Sigmoid:
                return scale / (1.0 + std::exp(-gain * (x - center)));
            case Phi::Constant:
                return mu;
        }
        return 0.0;
    }

    double eval(double s, double x) const {
        if (s < 0.0) throw std::domain_error("intensity evaluated at negative age");
        if (s < refractory_delta) return 0.0;
        return eval_phi(x);
    }

    double operator()(double s, double x) const { return eval(s, x); }

    // Lipschitz constant in x, uniform in s.
    double lip() const {
        switch (phi) {
            case Phi::Affine:
            case Phi::ClippedAffine:
                return std::abs(a);
            case Phi::Sigmoid:
                return scale * gain / 4.0;
            case Phi::Constant:
                return 0.0;
        }
        return 0.0;
    }

    // sup over (s, x); infinity for unclipped affine with a != 0.
    double sup_bound() const {
        switch (phi) {
            case Phi::Affine:
                return a == 0.0 ? std::max(0.0, mu) : kInf;
            case Phi::ClippedAffine:
                return cap;
            case Phi::Sigmoid:
                return scale;
            case Phi::Constant:
                return mu;
        }
        return 0.0;
    }

    bool bounded() const { return std::isfinite(sup_bound()); }
    bool age_independent() const { return refractory_delta == 0.0; }
    // Phi is nondecreasing for every family here, which the unbounded
    // thinning envelope relies on.
    bool phi_nondecreasing() const {
        switch (phi) {
            case Phi::Affine:
            case Phi::ClippedAffine:
                return a >= 0.0;
            case Phi::Sigmoid:
                return gain >= 0.0;
            case Phi::Constant:
                return true;
        }
        return false;
    }
};

inline double eval_intensity(const IntensityFn& f, double s, double x) { return f.eval(s, x); }

}  // namespace adrhp
