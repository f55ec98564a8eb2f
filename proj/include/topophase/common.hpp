#pragma once

#include <stdexcept>
#include <string>

namespace topophase {

/// Evaluation requested at (or too close to) a field source.
struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ill-posed geometry: point on a path segment, non-integer winding, ...
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An input violates an operation contract.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Evaluations closer than this to a source are rejected, never regularized;
// phases must come only from topology.
inline constexpr double kSourceGuard = 1e-12;

}  // namespace topophase
