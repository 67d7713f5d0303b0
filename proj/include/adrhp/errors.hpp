#pragma once

#include <stdexcept>
#include <string>

namespace adrhp {

// Model/config does not satisfy the hypotheses required by the requested
// pipeline (e.g. unbounded age-dependent intensity).
struct HypothesisError : std::runtime_error {
    explicit HypothesisError(const std::string& msg) : std::runtime_error(msg) {}
};

// An iterative solver failed to reach its tolerance.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// A thinning envelope was observed below the true intensity. This invalidates
// exactness of the sampler and is always a logic error.
struct EnvelopeViolation : std::logic_error {
    explicit EnvelopeViolation(const std::string& msg) : std::logic_error(msg) {}
};

// Event-count runaway guard (possible explosion of the point process).
struct ExplosionGuardError : std::runtime_error {
    explicit ExplosionGuardError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace adrhp
