// SPDX-License-Identifier: Apache-2.0
//
// risser: SER analysis and phase optimization for space-time coded RIS links

#pragma once

#include <stdexcept>
#include <string>

namespace risser {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// A quadrature routine failed to reach the requested tolerance.
/// Carries the last estimate and the achieved error indicator.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& msg, double estimate, double achieved_error)
        : Error(msg + " (last estimate " + std::to_string(estimate) +
                ", achieved error " + std::to_string(achieved_error) + ")"),
          estimate(estimate), achieved_error(achieved_error) {}
    double estimate;
    double achieved_error;
};

/// Root bracketing failed: no sign change over the given interval.
class BracketError : public Error {
public:
    explicit BracketError(const std::string& msg) : Error(msg) {}
};

/// Root iteration exceeded its budget without converging.
class IterationLimitError : public Error {
public:
    explicit IterationLimitError(const std::string& msg) : Error(msg) {}
};

/// The literal printed amplitude law produced a complex value
/// (negative sine raised to a non-integer exponent).
class ComplexResultError : public Error {
public:
    explicit ComplexResultError(const std::string& msg) : Error(msg) {}
};

/// Hypoexponential formulas were requested for a gain profile with
/// repeated (or nearly repeated) rates; the caller must route to the
/// saddle-point path instead.
class DegenerateRatesError : public Error {
public:
    explicit DegenerateRatesError(const std::string& msg) : Error(msg) {}
};

/// A negative-moment integral diverges (N_RIS <= Nt).
class DivergenceError : public Error {
public:
    explicit DivergenceError(const std::string& msg) : Error(msg) {}
};

/// A closed-form expression was requested outside its validity region.
class ValidityError : public Error {
public:
    explicit ValidityError(const std::string& msg) : Error(msg) {}
};

/// Not enough qualifying points for a curve fit.
class InsufficientPointsError : public Error {
public:
    explicit InsufficientPointsError(const std::string& msg) : Error(msg) {}
};

/// Invalid experiment configuration; message names the offending field.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& field, const std::string& msg)
        : Error(field + ": " + msg), field(field) {}
    std::string field;
};

} // namespace risser
