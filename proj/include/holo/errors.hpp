// errors.hpp — exception types that map onto the CLI exit-code contract

#pragma once

#include <stdexcept>
#include <string>

namespace holo {

/// Numerical inconsistency or breakdown (CLI exit 3).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Integrator or Monte Carlo result not stable under refinement (CLI exit 4).
struct ConvergenceError : NumericalError {
    using NumericalError::NumericalError;
};

/// Requested geometric phase cannot be produced at this radius (CLI exit 4).
struct UnreachablePhaseError : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace holo
