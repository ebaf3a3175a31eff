#pragma once

#include <stdexcept>
#include <string>

namespace sixv {

// Recoverable signal: an exact division by zero that corresponds to a pole
// of the evaluated expression (resonant parameter choice).  Callers may
// catch it and resample parameters.
class PoleError : public std::runtime_error {
public:
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument outside the contract of an operation.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A geometric series used by a trace resummation is singular (ratio equal
// to one) or otherwise inadmissible for the requested field value.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// A cleared-denominator identity check hit a singular sample point (some
// factor is a singular matrix there); the caller should resample.
class SingularSampleError : public std::runtime_error {
public:
    explicit SingularSampleError(const std::string& what) : std::runtime_error(what) {}
};

// The numeric (floating point) root finder failed to reach the requested
// tolerance.
class NumericFailure : public std::runtime_error {
public:
    explicit NumericFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sixv
