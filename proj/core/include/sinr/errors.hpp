#pragma once

#include <stdexcept>
#include <string>

namespace sinr {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: bad decimal strings, bad JSON, schema violations.
struct ParseError : Error {
    using Error::Error;
};

// Structurally valid input that violates a precondition (receiver on a
// transmitter, duplicate interpolation point, empty fraction list, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Engine asked to run on a scenario it does not support (wrong dimension,
// non-uniform power where uniform is required, no grid, ...).
struct EngineMismatch : Error {
    using Error::Error;
};

struct DuplicatePoint : ValidationError {
    using ValidationError::ValidationError;
};

struct EmptyInput : ValidationError {
    using ValidationError::ValidationError;
};

struct QueryOnTransmitter : ValidationError {
    using ValidationError::ValidationError;
};

struct PoleAtQuery : ValidationError {
    using ValidationError::ValidationError;
};

struct InvalidK : ValidationError {
    using ValidationError::ValidationError;
};

struct InvalidEps : ValidationError {
    using ValidationError::ValidationError;
};

// Exact-backend envelope construction hit two algebraic breakpoints that
// could not be separated within the refinement cap. Raised rather than
// guessed; see geometry docs.
struct UnresolvedTie : Error {
    using Error::Error;
};

}  // namespace sinr
