#pragma once

#include <stdexcept>
#include <string>

namespace lpstat {

/// Invalid or inconsistent input data (empty samples, malformed tables,
/// out-of-range arguments).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure (non-convergence, degenerate systems).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lpstat
