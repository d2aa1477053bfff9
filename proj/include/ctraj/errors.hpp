#pragma once

#include <stdexcept>
#include <string>

namespace ctraj {

/// Base class for everything thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands carry different metric signatures (or the wrong one for the call).
struct signature_error : error {
    using error::error;
};

/// A vector violates a tangency precondition at its base point.
struct tangency_error : error {
    using error::error;
};

/// A point is off its manifold, on the wrong sheet, or cannot be projected.
struct manifold_error : error {
    using error::error;
};

/// Zero or otherwise unusable initial data.
struct degenerate_input_error : error {
    using error::error;
};

/// Bad argument to an operation (non-positive step size and the like).
struct usage_error : error {
    using error::error;
};

/// The fixed-step march could not continue; the message names the last good s.
struct integration_error : error {
    using error::error;
};

/// A chart map was evaluated too close to its singular locus.
struct projection_singular_error : error {
    using error::error;
};

/// Closed-form predictions are not available for the requested field.
struct unsupported_oracle_error : error {
    using error::error;
};

/// Scenario configuration could not be parsed or validated.
struct config_error : error {
    using error::error;
};

}  // namespace ctraj
