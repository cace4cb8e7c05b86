#pragma once

#include <stdexcept>
#include <string>

namespace exgs {

// Invalid problem data, flags, or config files. CLI maps this to exit code 2.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical failure inside a solver (no bracket, divergence, stiffness guard).
// CLI maps this to exit code 3.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem / serialization failure. CLI maps this to exit code 4.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace exgs
