#pragma once

#include <stdexcept>
#include <string>

namespace ctrw {

// Error taxonomy maps onto the CLI exit codes: config = 2, numerical = 3,
// resource = 4. Anything escaping uncaught is a bug.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input: out-of-range parameters, malformed files, missing fields.
struct ConfigError : Error {
    using Error::Error;
};

// A numerical procedure failed to converge or produced garbage.
struct NumericalError : Error {
    using Error::Error;
};

// A hard budget (step count, memory) was exhausted.
struct ResourceError : Error {
    using Error::Error;
};

// Query beyond the guaranteed horizon of a path or realization.
struct HorizonError : ConfigError {
    using ConfigError::ConfigError;
};

}  // namespace ctrw
