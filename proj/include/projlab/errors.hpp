#pragma once

#include <stdexcept>
#include <string>

namespace projlab {

/// Input violates a documented precondition of an operation.
struct ContractError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidDimension : ContractError {
    using ContractError::ContractError;
};

struct InvalidRank : ContractError {
    using ContractError::ContractError;
};

/// A scalar field (psi) fails its finiteness/monotonicity requirements.
struct InvalidField : ContractError {
    using ContractError::ContractError;
};

/// Iterative solver stopped before reaching its tolerance. Carries the best
/// value reached so callers can still inspect the iterate.
struct ConvergenceError : std::runtime_error {
    double best_value;
    double residual;
    ConvergenceError(const std::string& what, double best, double res)
        : std::runtime_error(what), best_value(best), residual(res) {}
};

/// An estimator refused to run because its variance would be uncontrolled.
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace projlab
