#pragma once

#include <stdexcept>
#include <string>

namespace scorm {

// Error taxonomy shared by all modules. The CLI maps kinds to exit codes,
// library users can branch on them without string matching.
enum class ErrorKind {
    InvalidParameter,   // a distribution/model parameter violates its domain
    InvalidInput,       // a data argument violates a precondition (empty, mismatched, ...)
    InsufficientData,   // not enough observations to run the estimator
    Unidentifiable,     // data carries no information about the parameter
    Configuration,      // inconsistent simulation/bootstrap configuration
    Schema,             // malformed file: missing column, bad header
    Validation,         // well-formed file with invalid values (row-level)
    Numeric             // non-convergence or numerical failure
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_error(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace scorm
