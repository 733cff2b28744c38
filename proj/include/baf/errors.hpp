#pragma once

#include <stdexcept>
#include <string>

namespace baf {

/// Thrown when an evaluation point sits on (or within 1e-12 of) a pole.
struct PoleError : std::domain_error {
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

/// Thrown when an iteration (AGM, Newton, series) fails to converge.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace baf
