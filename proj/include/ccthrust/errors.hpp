#pragma once

#include <stdexcept>
#include <string>

namespace ccthrust {

// Non-finite or out-of-contract argument.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Evaluation requested exactly on a pole of the model.
struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

// Special-function or matrix arithmetic left the representable range.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive integration exhausted its subdivision budget.
struct ConvergenceError : std::runtime_error {
    double worst_lo = 0.0;
    double worst_hi = 0.0;
    double worst_error = 0.0;
    ConvergenceError(const std::string& msg, double lo, double hi, double err)
        : std::runtime_error(msg), worst_lo(lo), worst_hi(hi), worst_error(err) {}
};

// Malformed configuration / material description.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Emission failed or there was nothing to emit.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ccthrust
