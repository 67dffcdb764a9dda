#pragma once

#include <stdexcept>
#include <string>

namespace wtgf {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unknown variable name.
struct name_error : error {
    using error::error;
};

/// Invalid argument (overlapping groups, bad probabilities, name collisions, ...).
struct argument_error : error {
    using error::error;
};

/// Inconsistent model (alphabet mismatch, factorization residual, broken channel contract).
struct model_error : error {
    using error::error;
};

/// Malformed or inconsistent input file.
struct validation_error : error {
    using error::error;
};

/// Computation refused because it would exceed a configured budget.
struct budget_error : error {
    using error::error;
};

/// Coding-scheme rate constraints violated; message names the failed inequality.
struct scheme_error : error {
    using error::error;
};

} // namespace wtgf
