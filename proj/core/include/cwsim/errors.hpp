#pragma once
#include <stdexcept>
#include <string>

namespace cwsim {

// Nonlinear iteration did not converge; carries the last residual in the message.
struct SolverFailure : std::runtime_error {
    explicit SolverFailure(const std::string& msg) : std::runtime_error(msg) {}
};

// A constructed object violates its own invariants (e.g. non-positive volume in an ansatz).
struct InvalidState : std::runtime_error {
    explicit InvalidState(const std::string& msg) : std::runtime_error(msg) {}
};

// A time step produced non-positive v or theta; the caller may halve dt and retry.
struct StepRejected : std::runtime_error {
    explicit StepRejected(const std::string& msg) : std::runtime_error(msg) {}
};

// Anti-derivative of a perturbation does not vanish at the right end: the data
// carries mass the chosen mode cannot represent.
struct MassLeakError : std::runtime_error {
    explicit MassLeakError(const std::string& msg) : std::runtime_error(msg) {}
};

// Regression design matrix is numerically collinear.
struct IllConditionedError : std::runtime_error {
    IllConditionedError(const std::string& msg, double cond)
        : std::runtime_error(msg), condition_number(cond) {}
    double condition_number;
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cwsim
