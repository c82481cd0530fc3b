#pragma once

#include <stdexcept>

namespace bitension {

// Bad dimensions, malformed radii, off-constraint inputs.
struct InvalidInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A geometric precondition failed beyond tolerance (point off the quadric,
// vector not tangent, ...).  The message carries the violated residual.
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Chart coordinates outside the valid open set, or a finite-difference
// stencil that would leave it.
struct ChartDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inconsistent composition (inner/outer radius mismatch, wrong factor
// dimensions, command options that do not fit together).
struct ConfigurationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bitension
