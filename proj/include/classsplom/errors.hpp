#pragma once

#include <stdexcept>
#include <string>

namespace classsplom {

// Bad input data: I/O failures, parse errors, invariant violations.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical degeneracy: no discriminating direction, no orthogonal variance.
class DegenerateError : public std::runtime_error {
public:
    explicit DegenerateError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid run configuration (bad flag combinations, out-of-range parameters).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace classsplom
