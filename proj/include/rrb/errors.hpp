#pragma once

#include <stdexcept>
#include <string>

namespace rrb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the documented domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An iterative method exhausted its iteration budget.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, int iterations)
        : Error(what), iterations_(iterations) {}

    int iterations() const noexcept { return iterations_; }

private:
    int iterations_;
};

/// Fewer upper records are available than the operation needs.
class InsufficientRecordsError : public Error {
public:
    InsufficientRecordsError(const std::string& what, int available, int required)
        : Error(what), available_(available), required_(required) {}

    int available() const noexcept { return available_; }
    int required() const noexcept { return required_; }

private:
    int available_;
    int required_;
};

/// A root bracket could not be established (target not attainable).
class BracketError : public Error {
public:
    BracketError(const std::string& what, double best_argument, double best_value)
        : Error(what), best_argument_(best_argument), best_value_(best_value) {}

    double best_argument() const noexcept { return best_argument_; }
    double best_value() const noexcept { return best_value_; }

private:
    double best_argument_;
    double best_value_;
};

/// The requested combination is not supported (e.g. no closed-form moments).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Malformed simulation or command configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace rrb
