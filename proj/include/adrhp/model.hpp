#pragma once

#include <string>
#include <vector>

#include "adrhp/errors.hpp"
#include "adrhp/initial.hpp"
#include "adrhp/intensity.hpp"
#include "adrhp/kernel.hpp"
#include "adrhp/past.hpp"

namespace adrhp {

/// Everything that defines one model instance.
struct ModelSpec {
    RandomKernelLaw kernel;
    IntensityFn psi;
    InitialLaw initial;
    PastInfluenceLaw past;
    bool self_interaction = true;     // keep H_ii (1/n-scaled anyway)
    std::size_t event_cap = 1000000;  // explosion guard
};

/// One line of the assumption report.
struct AssumptionCheck {
    enum class Status { Satisfied, Violated, NotCheckable };
    std::string name;
    Status status;
    std::string detail;
};

struct AssumptionReport {
    std::vector<AssumptionCheck> checks;
    bool h1 = false;  // bounded intensity + density initial law: PDE pipeline
    bool h2 = false;  // age-independent intensity: Volterra pipeline

    const AssumptionCheck* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

// Walks the assumption ledger and reports which convergence regime(s) the
// model qualifies for.
inline AssumptionReport check_assumptions(const ModelSpec& m, double theta) {
    using St = AssumptionCheck::Status;
    AssumptionReport r;
    auto add = [&](const std::string& name, St st, const std::string& detail) {
        r.checks.push_back({name, st, detail});
    };

    // initial age admits a bounded density
    bool density_init = m.initial.has_bounded_density();
    add("initial_age_density", density_init ? St::Satisfied : St::Violated,
        density_init ? "initial age has a bounded density"
                     : "Dirac initial age has no density; PDE pipeline unavailable");

    // kernel envelope dominates and is locally integrable (closed form)
    add("kernel_envelope_integrable", St::Satisfied,
        "envelope L1 on [0,theta] = " + std::to_string(m.kernel.envelope_l1(theta)));

    // past influence: mean locally bounded, sqrt(variance) locally integrable
    {
        bool ok = true;
        for (int k = 0; k <= 20 && ok; ++k) {
            double t = theta * k / 20.0;
            double mean = m.past.mean(m.kernel, m.initial, t);
            double var = m.past.variance(m.kernel, m.initial, t);
            if (!std::isfinite(mean) || !std::isfinite(var) || var < -1e-12) ok = false;
        }
        add("past_influence_moments", ok ? St::Satisfied : St::Violated,
            ok ? "mean and variance finite on [0,theta]" : "nonfinite past-influence moments");
    }

    // Lipschitz intensity (by construction for all families)
    add("intensity_lipschitz", St::Satisfied, "Lip = " + std::to_string(m.psi.lip()));

    // bounded intensity
    bool bounded = m.psi.bounded();
    add("intensity_bounded", bounded ? St::Satisfied : St::Violated,
        bounded ? "sup = " + std::to_string(m.psi.sup_bound()) : "intensity unbounded");

    // age-independent intensity
    bool age_indep = m.psi.age_independent();
    add("intensity_age_independent", age_indep ? St::Satisfied : St::Violated,
        age_indep ? "no refractory mask" : "refractory delta > 0");

    // a.s. bounded initial age
    bool age_bd = std::isfinite(m.initial.age_bound());
    add("initial_age_bounded", age_bd ? St::Satisfied : St::Violated,
        age_bd ? "age <= " + std::to_string(m.initial.age_bound()) : "unbounded initial age");

    // square-integrable kernel envelope
    double l2 = m.kernel.envelope_l2();
    add("kernel_envelope_l2", std::isfinite(l2) ? St::Satisfied : St::Violated,
        "envelope L2 = " + std::to_string(l2));

    // continuity of the past-influence mean
    bool cont = m.past.mean_continuous(m.kernel.base);
    add("past_mean_continuous", cont ? St::Satisfied : St::NotCheckable,
        cont ? "continuous by construction"
             : "discontinuous kernel under common stimulus; continuity not guaranteed");

    r.h1 = bounded && density_init;
    r.h2 = age_indep;
    return r;
}

// Simulation-side gate: unbounded intensities additionally need a
// non-increasing kernel envelope for the exact thinning envelope.
inline void require_simulable(const ModelSpec& m) {
    if (!m.psi.bounded()) {
        if (!m.kernel.base.envelope_nonincreasing())
            throw HypothesisError(
                "unbounded intensity requires a non-increasing kernel envelope for exact thinning");
        if (!m.psi.phi_nondecreasing())
            throw HypothesisError("unbounded intensity requires a nondecreasing rate function");
    }
}

}  // namespace adrhp
