#pragma once

#include <stdexcept>
#include <string>

namespace mwfzp {

/// Invalid or inconsistent user configuration (CLI exit code 1).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Iterative solver failed to converge (CLI exit code 2).
struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Non-finite values or other numerical breakdown (CLI exit code 2).
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mwfzp
