#pragma once

#include <stdexcept>
#include <string>

namespace sgrid {

// Input file could not be parsed or is structurally unusable.
struct LoadError : std::runtime_error {
    explicit LoadError(const std::string& msg) : std::runtime_error(msg) {}
};

// A run configuration violates its invariants (depth > d, bad block size, ...).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// An estimator cannot produce a defined value (e.g. degenerate KDE bandwidth).
struct EstimatorError : std::runtime_error {
    explicit EstimatorError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sgrid
