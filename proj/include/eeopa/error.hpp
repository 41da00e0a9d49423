// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#pragma once

#include <stdexcept>
#include <string>

namespace eeopa {

enum class ErrorKind {
    invalid_input,
    unsupported_config,
    closed_form_mismatch,
    numeric,
    infeasible_budget,
    parse,
};

const char *to_string(ErrorKind kind);

/// Base exception for every failure reported by the library.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised when a closed-form density fails its normalization check.
class ClosedFormMismatch : public Error {
public:
    ClosedFormMismatch(const std::string &what, double measured_integral)
        : Error(ErrorKind::closed_form_mismatch, what), integral_(measured_integral) {}

    double measured_integral() const noexcept { return integral_; }

private:
    double integral_;
};

/// Raised when an adaptive integral misses its tolerance.
class NumericError : public Error {
public:
    NumericError(const std::string &what, double estimate, double error_estimate, int intervals)
        : Error(ErrorKind::numeric, what),
          estimate_(estimate), error_(error_estimate), intervals_(intervals) {}

    double estimate() const noexcept { return estimate_; }
    double error_estimate() const noexcept { return error_; }
    int intervals() const noexcept { return intervals_; }

private:
    double estimate_;
    double error_;
    int intervals_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what)
{
    throw Error(kind, what);
}

inline void require(bool condition, const std::string &what)
{
    if (!condition)
        fail(ErrorKind::invalid_input, what);
}

} // namespace eeopa
