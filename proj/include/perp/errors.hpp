#pragma once

#include <stdexcept>
#include <string>

namespace perp {

// Raised for malformed or inconsistent input data (CSV contents, series
// that violate cadence/ordering constraints, schedules with missing events).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Raised for invalid configuration: bad CLI flags, unreadable config keys,
// parameter combinations that make no sense.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace perp
