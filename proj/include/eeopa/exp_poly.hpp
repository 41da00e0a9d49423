// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace eeopa {

/// f(x) = sum_i c_i x^{k_i} e^{-a_i x} with a_i > 0. All closed-form
/// marginal densities used here are of this shape.
///
/// Near the origin such sums often cancel to a high power of x. When every
/// coefficient and rate is a small-denominator rational, the Taylor series at
/// zero is derived exactly and used wherever its rounding bound beats the
/// direct sum.
class ExpPoly {
public:
    struct Term {
        double coefficient;
        int power;
        double rate;
        /// coefficient as num/den when known exactly (den = 0 otherwise)
        long long num = 0;
        long long den = 0;
    };

    ExpPoly() = default;
    ExpPoly(std::initializer_list<Term> terms);

    /// Appends c * x^k * e^{-rate x} for each coefficient c_k of `poly`
    /// (lowest power first), scaled by `scale`.
    ExpPoly &add(double scale, double rate, std::span<const double> poly);
    ExpPoly &add(double scale, double rate, std::initializer_list<double> poly)
    {
        return add(scale, rate, std::span<const double>(poly.begin(), poly.size()));
    }

    double operator()(double x) const;

    /// Exact integral over [a, b]; b may be +infinity.
    double integral(double a, double b) const;
    double integral_to_infinity() const;

    const std::vector<Term> &terms() const noexcept { return terms_; }

    /// Taylor coefficients at zero (empty when unavailable).
    const std::vector<double> &series() const noexcept { return series_; }

private:
    void rebuild_series();
    double direct(double x, double &bound) const;
    double primitive(double x) const;

    std::vector<Term> terms_;
    std::vector<double> series_;
};

} // namespace eeopa
