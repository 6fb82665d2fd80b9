#pragma once

#include <stdexcept>
#include <string>

namespace hyperflow {

/// Bad argument values (index out of range, inconsistent sizes, ...).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Input left the mathematical domain of an operation (e.g. curvature
/// tuple outside the positive cone while evaluating the flow speed).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Requested value outside a tabulated/bracketed range.
struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Non-finite values produced where finite ones are required.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A shape generator could not satisfy its postcondition.
struct GenerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive time stepping underflowed the minimum step size.
struct FlowStallError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A flow-time monitor detected an inadmissible state (e.g. loss of
/// h-convexity beyond tolerance: discretization too coarse).
struct MonitorViolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed configuration files / CLI input.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hyperflow
