#pragma once

#include <stdexcept>
#include <string>

namespace nads {

// Error categories map 1:1 onto the CLI exit codes (validation 2, I/O 3,
// infeasible parameters 4).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
    using Error::Error;
};

// Malformed input text; carries the 1-based line number.
struct ParseError : ValidationError {
    ParseError(const std::string& what, long line)
        : ValidationError(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
    long line_number;
};

struct IoError : Error {
    using Error::Error;
};

// Parameter regimes under which propagation or a series does not converge.
struct InfeasibleError : Error {
    using Error::Error;
};

// Oracle instance exceeds its enumeration guard.
struct SizeError : ValidationError {
    using ValidationError::ValidationError;
};

}  // namespace nads
