#pragma once

#include <stdexcept>
#include <string>

namespace bait {

// Bad inputs: malformed files, inconsistent dimensions, unknown config keys.
// The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown that signals a caller bug or an unusable instance
// (non-PD downdate, singular system). CLI exit code 3.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bait
