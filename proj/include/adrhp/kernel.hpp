#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "adrhp/rng.hpp"

namespace adrhp {

/// Parametric interaction function h(t) on [0,inf) together with its
/// dominating envelope M(t) >= |h(t)| and the closed-form norms the
/// convergence bounds need.
struct KernelSpec {
    enum class Family { Exponential, Erlang, PiecewiseConstant, Zero };

    Family family = Family::Zero;
    double alpha = 0.0;  // Exponential/Erlang: h(0+) weight resp. mass, see eval()
    double beta = 0.0;   // decay rate (1/time)
    int order = 1;       // Erlang shape k >= 1
    std::vector<double> breakpoints;  // PiecewiseConstant: 0 = b0 < b1 < ... < bm
    std::vector<double> values;       // value on [b_{i}, b_{i+1}); 0 after bm

    static KernelSpec exponential(double alpha, double beta) {
        KernelSpec k;
        k.family = Family::Exponential;
        k.alpha = alpha;
        k.beta = beta;
        return k;
    }
    static KernelSpec erlang(double alpha, double beta, int order) {
        KernelSpec k;
        k.family = Family::Erlang;
        k.alpha = alpha;
        k.beta = beta;
        k.order = order;
        return k;
    }
    static KernelSpec piecewise_constant(std::vector<double> breaks, std::vector<double> vals) {
        KernelSpec k;
        k.family = Family::PiecewiseConstant;
        k.breakpoints = std::move(breaks);
        k.values = std::move(vals);
        if (k.breakpoints.size() != k.values.size() + 1)
            throw std::invalid_argument("piecewise kernel: need one more breakpoint than values");
        return k;
    }
    static KernelSpec zero() { return KernelSpec{}; }

    // h(t). Exponential: alpha*exp(-beta t). Erlang of shape k:
    // alpha * beta^k t^{k-1} exp(-beta t) / (k-1)!  (so ||h||_1 = alpha).
    double eval(double t) const {
        if (t < 0.0) throw std::domain_error("kernel evaluated at negative time");
        switch (family) {
            case Family::Exponential:
                return alpha * std::exp(-beta * t);
            case Family::Erlang: {
                double lg = std::lgamma(static_cast<double>(order));
                return alpha * std::exp(order * std::log(beta) + (order - 1) * std::log(t > 0 ? t : 1e-300)
                                        - beta * t - lg) * (order == 1 || t > 0 ? 1.0 : 0.0);
            }
            case Family::PiecewiseConstant: {
                if (breakpoints.empty() || t >= breakpoints.back()) return 0.0;
                for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
                    if (t >= breakpoints[i] && t < breakpoints[i + 1]) return values[i];
                return 0.0;
            }
            case Family::Zero:
                return 0.0;
        }
        return 0.0;
    }

    double operator()(double t) const { return eval(t); }

    // Dominating envelope M(t) >= |h(t)|; for every family here it equals
    // |h(t)| exactly, which the dominating linear process relies on.
    double envelope(double t) const { return std::abs(eval(t)); }

    // integral of M over [0,T]
    double envelope_l1(double T) const {
        switch (family) {
            case Family::Exponential:
                return std::abs(alpha) / beta * (-std::expm1(-beta * T));
            case Family::Erlang: {
                // regularized lower incomplete gamma P(k, beta*T)
                return std::abs(alpha) * gamma_p(order, beta * T);
            }
            case Family::PiecewiseConstant: {
                double s = 0.0;
                for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
                    double a = std::min(T, breakpoints[i]);
                    double b = std::min(T, breakpoints[i + 1]);
                    if (b > a) s += std::abs(values[i]) * (b - a);
                }
                return s;
            }
            case Family::Zero:
                return 0.0;
        }
        return 0.0;
    }

    // ||M||_1 over [0,inf)
    double envelope_l1() const {
        switch (family) {
            case Family::Exponential:
                return std::abs(alpha) / beta;
            case Family::Erlang:
                return std::abs(alpha);
            case Family::PiecewiseConstant:
                return envelope_l1(breakpoints.empty() ? 0.0 : breakpoints.back());
            case Family::Zero:
                return 0.0;
        }
        return 0.0;
    }

    // ||M||_2 over [0,inf)
    double envelope_l2() const {
        switch (family) {
            case Family::Exponential:
                return std::abs(alpha) / std::sqrt(2.0 * beta);
            case Family::Erlang: {
                // integral of h^2 = alpha^2 beta^{2k} (2k-2)! / ((k-1)!^2 (2 beta)^{2k-1})
                int k = order;
                double lg = std::lgamma(2.0 * k - 1.0) - 2.0 * std::lgamma(static_cast<double>(k));
                double l2sq = alpha * alpha * std::exp(lg + (2.0 * k) * std::log(beta)
                                                      - (2.0 * k - 1.0) * std::log(2.0 * beta));
                return std::sqrt(l2sq);
            }
            case Family::PiecewiseConstant: {
                double s = 0.0;
                for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
                    s += values[i] * values[i] * (breakpoints[i + 1] - breakpoints[i]);
                return std::sqrt(s);
            }
            case Family::Zero:
                return 0.0;
        }
        return 0.0;
    }

    // The exact thinning envelope for unbounded intensities requires a
    // non-increasing kernel envelope (interaction pressure then decays
    // between events).
    bool envelope_nonincreasing() const {
        switch (family) {
            case Family::Exponential:
            case Family::Zero:
                return true;
            case Family::Erlang:
                return order == 1;
            case Family::PiecewiseConstant: {
                for (std::size_t i = 0; i + 1 < values.size(); ++i)
                    if (std::abs(values[i + 1]) > std::abs(values[i])) return false;
                return true;
            }
        }
        return false;
    }

    bool is_exponential() const { return family == Family::Exponential || family == Family::Zero; }

  private:
    // regularized lower incomplete gamma for integer shape
    static double gamma_p(int k, double x) {
        // P(k,x) = 1 - exp(-x) sum_{j<k} x^j/j!
        double term = 1.0, sum = 1.0;
        for (int j = 1; j < k; ++j) {
            term *= x / j;
            sum += term;
        }
        return 1.0 - std::exp(-x) * sum;
    }
};

inline double eval_kernel(const KernelSpec& k, double t) { return k.eval(t); }

/// Scalar weight law for the random kernels H = w * base.
struct WeightLaw {
    enum class Kind { Deterministic, Uniform, Bernoulli };

    Kind kind = Kind::Deterministic;
    double w = 1.0;       // Deterministic / Bernoulli value
    double a = 0.0;       // Uniform lower
    double b = 1.0;       // Uniform upper
    double p = 1.0;       // Bernoulli success probability

    static WeightLaw deterministic(double w) { return {Kind::Deterministic, w, 0, 1, 1}; }
    static WeightLaw uniform(double a, double b) { return {Kind::Uniform, 1, a, b, 1}; }
    static WeightLaw bernoulli(double p, double w) { return {Kind::Bernoulli, w, 0, 1, p}; }

    double mean() const {
        switch (kind) {
            case Kind::Deterministic: return w;
            case Kind::Uniform: return 0.5 * (a + b);
            case Kind::Bernoulli: return p * w;
        }
        return 0.0;
    }
    double second_moment() const {
        switch (kind) {
            case Kind::Deterministic: return w * w;
            case Kind::Uniform: return (a * a + a * b + b * b) / 3.0;
            case Kind::Bernoulli: return p * w * w;
        }
        return 0.0;
    }
    double variance() const { return second_moment() - mean() * mean(); }
    // |w| <= w_max a.s.
    double max_abs() const {
        switch (kind) {
            case Kind::Deterministic: return std::abs(w);
            case Kind::Uniform: return std::max(std::abs(a), std::abs(b));
            case Kind::Bernoulli: return std::abs(w);
        }
        return 0.0;
    }
    double sample(Rng& rng) const {
        switch (kind) {
            case Kind::Deterministic: return w;
            case Kind::Uniform: return a + (b - a) * rng.uniform();
            case Kind::Bernoulli: return rng.uniform() <= p ? w : 0.0;
        }
        return 0.0;
    }
};

/// Law mu_H of the random interaction functions: H = w * base with w i.i.d.
struct RandomKernelLaw {
    KernelSpec base;
    WeightLaw weights;

    // m_{mu_H}(t) = E[w] h_base(t)
    double mean_kernel(double t) const { return weights.mean() * base.eval(t); }
    // M_{mu_H}(t) = w_max M_base(t), dominating a.s.
    double envelope(double t) const { return weights.max_abs() * base.envelope(t); }
    double envelope_l1() const { return weights.max_abs() * base.envelope_l1(); }
    double envelope_l1(double T) const { return weights.max_abs() * base.envelope_l1(T); }
    double envelope_l2() const { return weights.max_abs() * base.envelope_l2(); }
};

inline std::pair<double, double> kernel_mean_and_envelope(const RandomKernelLaw& law, double t) {
    return {law.mean_kernel(t), law.envelope(t)};
}

/// One realization of the n x n matrix H_ij = w_ij * base.
struct InteractionMatrix {
    KernelSpec base;
    Eigen::MatrixXd weights;  // weights(i, j)

    double eval(int i, int j, double t) const { return weights(i, j) * base.eval(t); }
};

// i.i.d. entries; pure function of (law, n, seed).
inline InteractionMatrix sample_interaction_matrix(const RandomKernelLaw& law, int n,
                                                   std::uint64_t seed) {
    if (n < 1) throw std::domain_error("sample_interaction_matrix: n must be >= 1");
    InteractionMatrix m;
    m.base = law.base;
    m.weights.resize(n, n);
    for (int i = 0; i < n; ++i) {
        Rng rng(mix_keys(seed, 0x48u, static_cast<std::uint64_t>(i)));
        for (int j = 0; j < n; ++j) m.weights(i, j) = law.weights.sample(rng);
    }
    return m;
}

}  // namespace adrhp
