#pragma once

#include <stdexcept>
#include <string>

namespace taskmech {

// Base class for all domain errors thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPositiveSupport : Error {
    using Error::Error;
};

struct EmptySupport : Error {
    using Error::Error;
};

struct ZeroDensity : Error {
    using Error::Error;
};

struct NegativeParticipation : Error {
    using Error::Error;
};

// Raised when the reward slope reaches or exceeds the marginal cost p:
// the agent's utility then increases without bound in x.
struct UnboundedResponse : Error {
    using Error::Error;
};

struct EmptyGrid : Error {
    using Error::Error;
};

struct NonMonotoneAlpha : Error {
    using Error::Error;
};

// Raised when a state trajectory drives alpha into the infeasible
// region alpha >= p - margin.
struct AlphaExceedsCost : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct CsvError : Error {
    using Error::Error;
};

}  // namespace taskmech
