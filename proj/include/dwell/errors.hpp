#pragma once

#include <stdexcept>

namespace dwell {

// One exception type per module error contract; messages carry the context
// (offending x0, iteration counts, ...).

struct NoDoubleWell : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoBoundMode : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateOmega : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularJacobian : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepCollapse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace dwell
