// Exception types shared across the library. The CLI maps them to exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace stereogen {

// Malformed or unsupported PGM content.
struct PgmError : std::runtime_error {
    explicit PgmError(const std::string& what) : std::runtime_error(what) {}
};

// File could not be opened / read / written.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Image/chromosome/context dimensions do not agree.
struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid parameter value (rates, ranges, d_max, ...).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace stereogen
