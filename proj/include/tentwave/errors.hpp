#pragma once

#include <stdexcept>
#include <string>

namespace tentwave {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid geometric input (nonpositive pole height, negative half-width, ...).
struct GeometryError : Error {
    using Error::Error;
};

/// Configuration rejected before any computation started.
struct ConfigError : Error {
    using Error::Error;
};

/// Numerical failure during a run; carries the tent index when known.
struct NumericalError : Error {
    explicit NumericalError(const std::string& what, int tent_index = -1)
        : Error(what), tent_index(tent_index) {}
    int tent_index;
};

}  // namespace tentwave
