#pragma once

#include <stdexcept>
#include <string>

namespace arhyst {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite or otherwise mathematically invalid argument.
struct DomainError : Error {
    using Error::Error;
};

// Structurally invalid parameter (out of documented range, bad sizes, ...).
struct ParamError : Error {
    using Error::Error;
};

// Argument lies in a region the implementation deliberately does not support
// (e.g. cdf tails that underflow double precision).
struct UnsupportedRegionError : Error {
    using Error::Error;
};

// Iteration or adaptive subdivision failed to reach the requested tolerance.
struct ConvergenceError : Error {
    using Error::Error;
};

// Domain truncation would discard non-negligible kernel mass.
struct TruncationError : Error {
    using Error::Error;
};

// A simulated path exceeded the hard step cap without terminating.
struct NonTerminationError : Error {
    using Error::Error;
};

// Quantity undefined at the requested point (e.g. multiplier at eta = 0).
struct SingularityError : Error {
    using Error::Error;
};

// Requested level/bracket cannot be attained.
struct InfeasibleError : Error {
    using Error::Error;
};

}  // namespace arhyst
