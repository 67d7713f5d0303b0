#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "adrhp/point_path.hpp"
#include "adrhp/rng.hpp"

namespace adrhp {

/// Initial condition: one past point T0 = -A with A drawn from the declared
/// age density u_in.
struct InitialLaw {
    enum class Kind { ExponentialAge, UniformAge, DiracAge };

    Kind kind = Kind::ExponentialAge;
    double rate = 1.0;   // ExponentialAge
    double upper = 1.0;  // UniformAge on [0, upper]; also M_{T0} when finite
    double a0 = 0.0;     // DiracAge atom

    static InitialLaw exponential_age(double rate) {
        InitialLaw l;
        l.kind = Kind::ExponentialAge;
        l.rate = rate;
        return l;
    }
    static InitialLaw uniform_age(double upper) {
        InitialLaw l;
        l.kind = Kind::UniformAge;
        l.upper = upper;
        return l;
    }
    static InitialLaw dirac_age(double a0) {
        InitialLaw l;
        l.kind = Kind::DiracAge;
        l.a0 = a0;
        return l;
    }

    // true iff the age law admits a bounded density (the PDE pipeline
    // requires it; Dirac does not qualify)
    bool has_bounded_density() const { return kind != Kind::DiracAge; }

    // density u_in(s) of the initial age
    double density(double s) const {
        if (s < 0.0) return 0.0;
        switch (kind) {
            case Kind::ExponentialAge:
                return rate * std::exp(-rate * s);
            case Kind::UniformAge:
                return s <= upper ? 1.0 / upper : 0.0;
            case Kind::DiracAge:
                throw std::logic_error("Dirac initial age has no density");
        }
        return 0.0;
    }

    double density_sup() const {
        switch (kind) {
            case Kind::ExponentialAge: return rate;
            case Kind::UniformAge: return 1.0 / upper;
            case Kind::DiracAge: throw std::logic_error("Dirac initial age has no density");
        }
        return 0.0;
    }

    // almost-sure bound M_{T0} on the initial age, +inf if none
    double age_bound() const {
        switch (kind) {
            case Kind::ExponentialAge: return std::numeric_limits<double>::infinity();
            case Kind::UniformAge: return upper;
            case Kind::DiracAge: return a0;
        }
        return 0.0;
    }

    double sample_age(Rng& rng) const {
        switch (kind) {
            case Kind::ExponentialAge: return rng.exponential(rate);
            case Kind::UniformAge: return upper * rng.uniform();
            case Kind::DiracAge: return a0;
        }
        return 0.0;
    }
};

inline PointPath sample_initial_past(const InitialLaw& law, Rng& rng) {
    PointPath p;
    p.past = -law.sample_age(rng);
    return p;
}

}  // namespace adrhp
