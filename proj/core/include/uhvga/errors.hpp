#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace uhvga {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A computation produced a non-finite value. `coordinates` holds the
/// offending input (decision vector, step, ...) when one is available.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what, std::vector<double> coordinates = {})
        : Error(what), coordinates_(std::move(coordinates)) {}

    const std::vector<double>& coordinates() const noexcept { return coordinates_; }

private:
    std::vector<double> coordinates_;
};

class UnsupportedOperation : public Error {
public:
    using Error::Error;
};

/// A caller broke an operation's precondition (e.g. asked for the
/// hypervolume gradient of a dominated point).
class ContractViolation : public Error {
public:
    using Error::Error;
};

class InvalidState : public Error {
public:
    using Error::Error;
};

/// Weak-domination perturbation could not separate coinciding points.
class DegenerateConfiguration : public Error {
public:
    DegenerateConfiguration(const std::string& what, std::vector<std::size_t> indices)
        : Error(what), indices_(std::move(indices)) {}

    const std::vector<std::size_t>& indices() const noexcept { return indices_; }

private:
    std::vector<std::size_t> indices_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace uhvga
