#pragma once

#include <stdexcept>
#include <string>

namespace echolab {

/// Invalid argument supplied by the caller (bad dimension, empty ensemble, ...).
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Argument outside the mathematical domain of a closed-form expression.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A least-squares fit could not be performed on the selected window.
class FitError : public std::runtime_error {
public:
    explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem problems when writing results.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace echolab
