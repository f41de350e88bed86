#pragma once

#include <stdexcept>
#include <string>

namespace twistoid {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A point was evaluated outside the domain of a piecewise function or chart.
struct DomainError : Error {
    using Error::Error;
};

/// Two groupoid elements with mismatched source/range were multiplied.
struct NotComposable : Error {
    using Error::Error;
};

/// Operands built over different contexts (cover, bundle, grid) were mixed.
struct ContextMismatch : Error {
    using Error::Error;
};

/// A query that must return at least one result returned none.
struct EmptyResult : Error {
    using Error::Error;
};

/// Input data failed a structural invariant check.
struct InvariantViolation : Error {
    using Error::Error;
};

/// Bad run configuration (incompatible grid, malformed rational, ...).
struct InvalidConfig : Error {
    using Error::Error;
};

} // namespace twistoid
