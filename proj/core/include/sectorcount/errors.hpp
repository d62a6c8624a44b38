#pragma once

#include <stdexcept>
#include <string>

namespace sectorcount {

// Base class for all recoverable library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A brute-force counter was asked to run above its configured ceiling.
struct CeilingExceeded : Error {
    using Error::Error;
};

// An operation's stated precondition does not hold for the given inputs.
struct PreconditionViolated : Error {
    using Error::Error;
};

// No continued-fraction convergent with q < R satisfies |delta| < eps/2.
struct NoAdmissibleConvergent : Error {
    using Error::Error;
};

// An exact-floor request outside the supported expression shapes.
struct NotRepresentable : Error {
    using Error::Error;
};

// A fast counter's preconditions failed and the query is above the brute ceiling.
struct FallbackImpossible : Error {
    using Error::Error;
};

// Too few usable data points for a fit.
struct InsufficientData : Error {
    using Error::Error;
};

// No asymptotic prediction exists in this parameter range.
struct GapRegime : Error {
    using Error::Error;
};

// Sweep configuration file could not be parsed; `line` is 1-based.
struct ConfigError : Error {
    int line;
    ConfigError(const std::string& msg, int line_no) : Error(msg), line(line_no) {}
};

}  // namespace sectorcount
