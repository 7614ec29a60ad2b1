#pragma once

#include <stdexcept>
#include <string>

namespace ultraslow {

/// Argument outside the mathematical domain of an operation (branch cut, pole, bad order).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure stopped before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double estimate)
        : std::runtime_error(what + " (error estimate " + std::to_string(estimate) + ")"),
          estimate_(estimate) {}
    double estimate() const { return estimate_; }

private:
    double estimate_;
};

/// Two independent evaluation paths of the same quantity differ beyond their estimates.
class DisagreementError : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

/// Malformed or out-of-range configuration; the message names the field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ultraslow
