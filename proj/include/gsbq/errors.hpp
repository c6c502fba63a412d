#pragma once

#include <stdexcept>
#include <string>

namespace gsbq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Grid construction
struct NotPowerOfTwo : Error { using Error::Error; };
struct NonPositiveLength : Error { using Error::Error; };

// Parameter / regime violations
struct DomainError : Error { using Error::Error; };

// Quadrature oracle failed to reach its tolerance
struct QuadratureNonConvergence : Error { using Error::Error; };

// Iterative solver outcomes
struct NonConvergence : Error { using Error::Error; };
struct DegenerateIterate : Error { using Error::Error; };
struct TailTruncation : Error { using Error::Error; };

// Surface differencing / scaling
struct StepTooLarge : Error { using Error::Error; };
struct ScaleOutOfRange : Error { using Error::Error; };

// Time stepping
struct NonFinite : Error { using Error::Error; };

// CLI
struct UsageError : Error { using Error::Error; };

}  // namespace gsbq
