#pragma once

#include <stdexcept>
#include <string>

namespace jacobi3 {

/// Malformed or out-of-contract input (singular matrix, zero form, bad JSON).
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not reach a trustworthy answer: conditioning,
/// truncation caps, integration accuracy, values too close to a threshold.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Internal consistency check failed (Riemann-Hurwitz, homology rank,
/// calibration drift). Always signals a bug or a broken convention.
struct inconsistency_error : std::logic_error {
    using std::logic_error::logic_error;
};

/// Process exit codes used by the command line tool.
enum class exit_code : int {
    success = 0,
    invalid_input = 2,
    indeterminate = 3,
    inconsistency = 4,
};

}  // namespace jacobi3
