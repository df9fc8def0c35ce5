#pragma once

#include <stdexcept>

namespace tfm {

// Base for everything the library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Precondition violated by the caller (bad grid, off-grid shift, ...).
struct InvalidArgument : Error {
    using Error::Error;
};

// A signal or symbol does not fit the grid it is asked to live on
// (Nyquist violation, insufficient extent, frequency coverage).
struct GuardError : Error {
    using Error::Error;
};

// Adaptive quadrature did not reach the requested tolerance.
struct QuadratureError : Error {
    using Error::Error;
};

// Self-consistency check inside the library failed; indicates a bug.
struct InternalError : Error {
    using Error::Error;
};

} // namespace tfm
