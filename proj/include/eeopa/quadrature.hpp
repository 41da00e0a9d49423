// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#pragma once

#include <functional>
#include <span>
#include <string>

namespace eeopa {

/// Stopping rule for adaptive integration: an integral is accepted once its
/// error estimate is at most max(absolute, relative * |value|).
struct Tolerance {
    double absolute = 1e-8;
    double relative = 0.0;
    int max_intervals = 2000;
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    int intervals = 0;
    long evaluations = 0;
    bool converged = true;

    QuadResult &operator+=(const QuadResult &other);
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 21-point Gauss-Kronrod integration of f over [a, b].
/// Never throws on non-convergence; inspect `converged`.
QuadResult integrate(const Integrand &f, double a, double b, const Tolerance &tol = {});

/// Same as integrate() but throws NumericError (with `what` as context) when
/// the tolerance was not met.
QuadResult integrate_checked(const Integrand &f, double a, double b, const Tolerance &tol,
                             const std::string &what);

/// Integrates over a nonnegative gain axis [lo, hi]. Below 1 the range is cut
/// into decades and each decade is integrated in the log variable, so
/// integrands with scale features near a tiny lower limit (thresholds down to
/// 1e-300) are resolved. Extra breakpoints (e.g. a policy threshold) may be
/// given. The tolerance applies to the whole integral and is shared across
/// the pieces.
QuadResult integrate_gain_axis(const Integrand &f, double lo, double hi, const Tolerance &tol = {},
                               std::span<const double> breakpoints = {});

} // namespace eeopa
