#pragma once

#include <stdexcept>
#include <string>

namespace ghcwave {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter or configuration violates a model invariant.
struct ValidationError : Error {
    using Error::Error;
};

// Evaluation left the domain of an expression (sqrt of a non-positive value,
// quadrature over an interval where F changes sign, ...).
struct DomainError : Error {
    using Error::Error;
};

// A jet expression was differentiated past the supported label set.
struct OrderOverflowError : Error {
    using Error::Error;
};

// A root cluster could not be resolved at the requested tolerance.
struct IllConditionedError : Error {
    using Error::Error;
};

// Simulation produced non-finite values; carries the last valid time.
struct BlowUpError : Error {
    double last_valid_time;
    explicit BlowUpError(double t, const std::string& what)
        : Error(what), last_valid_time(t) {}
};

}  // namespace ghcwave
