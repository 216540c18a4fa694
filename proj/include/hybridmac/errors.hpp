#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hybridmac {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation
/// (e.g. a probability outside (0,1)).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Success index i >= L, where the per-success formulas divide by L - i.
class DegenerateIndexError : public Error {
public:
    using Error::Error;
};

/// Finite-difference step pushes the probability outside (0,1).
class StepTooLargeError : public Error {
public:
    using Error::Error;
};

/// Not even a single device fits into the frame budget.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// A configuration value is missing or malformed. `field()` names it.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace hybridmac
