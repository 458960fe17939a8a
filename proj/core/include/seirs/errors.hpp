#pragma once

#include <stdexcept>
#include <string>

namespace seirs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value violates a documented precondition or type invariant.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& message)
        : Error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Quadrature, root finding or integration produced a non-finite or
/// non-converged result.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Configuration text could not be parsed or is incomplete.
class ConfigError : public Error {
public:
    ConfigError(const std::string& message, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// A simulation run was aborted.
class SimulationError : public Error {
public:
    SimulationError(const std::string& message, long step)
        : Error(message), step_(step) {}

    long step() const noexcept { return step_; }

private:
    long step_;
};

} // namespace seirs
