// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#include "eeopa/exp_poly.hpp"
#include "eeopa/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

namespace eeopa {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr int kSeriesTerms = 110;
// The series is only tried below this point; beyond it the direct sum has
// no cancellation worth avoiding for the shapes used here.
constexpr double kSeriesReach = 3.0;

// Exact rational with denominator <= 1e6 that converts back to x, if any.
std::optional<Rational> rationalize(double x)
{
    if (!std::isfinite(x))
        return std::nullopt;
    // Continued fraction convergents h/k.
    std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int i = 0; i < 40; ++i) {
        const double a = std::floor(r);
        if (std::fabs(a) > 1e15)
            return std::nullopt;
        const auto ai = static_cast<std::int64_t>(a);
        const std::int64_t h2 = ai * h1 + h0;
        const std::int64_t k2 = ai * k1 + k0;
        if (k2 > 1'000'000)
            return std::nullopt;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (static_cast<double>(h1) / static_cast<double>(k1) == x)
            return Rational(h1, k1);
        const double frac = r - a;
        if (frac == 0.0)
            return std::nullopt;
        r = 1.0 / frac;
    }
    return std::nullopt;
}

// int_0^x t^k e^{-a t} dt = k!/a^{k+1} * P(k+1, a x), with P the regularized
// lower incomplete gamma function; the finite sum form is exact for integer k.
double lower_integral(int k, double a, double x)
{
    if (x <= 0.0)
        return 0.0;
    const double full = std::exp(std::lgamma(k + 1.0) - (k + 1) * std::log(a));
    if (std::isinf(x))
        return full;
    // 1 - e^{-ax} sum_{j=0}^{k} (ax)^j / j!
    const double ax = a * x;
    double term = 1.0;
    double sum = 1.0;
    for (int j = 1; j <= k; ++j) {
        term *= ax / j;
        sum += term;
    }
    const double upper_fraction = std::exp(-ax) * sum;
    return full * (1.0 - upper_fraction);
}

} // namespace

ExpPoly::ExpPoly(std::initializer_list<Term> terms) : terms_(terms)
{
    for (const auto &t : terms_)
        require(t.rate > 0.0 && t.power >= 0, "exp-poly terms need rate > 0 and power >= 0");
    rebuild_series();
}

ExpPoly &ExpPoly::add(double scale, double rate, std::span<const double> poly)
{
    require(rate > 0.0, "exp-poly rate must be positive");
    const auto exact_scale = rationalize(scale);
    int k = 0;
    for (double c : poly) {
        if (c != 0.0) {
            Term t{scale * c, k, rate};
            const auto exact_c = rationalize(c);
            if (exact_scale && exact_c) {
                const Rational r = *exact_scale * *exact_c;
                t.num = static_cast<long long>(boost::multiprecision::numerator(r));
                t.den = static_cast<long long>(boost::multiprecision::denominator(r));
            }
            terms_.push_back(t);
        }
        ++k;
    }
    rebuild_series();
    return *this;
}

void ExpPoly::rebuild_series()
{
    series_.clear();
    std::vector<Rational> d(kSeriesTerms, Rational(0));
    for (const auto &t : terms_) {
        // c * x^k * sum_i (-a x)^i / i!
        const auto c = t.den != 0 ? std::optional<Rational>(Rational(t.num, t.den)) : rationalize(t.coefficient);
        const auto a = rationalize(t.rate);
        if (!c || !a)
            return;
        Rational term = *c;
        for (int i = 0; t.power + i < kSeriesTerms; ++i) {
            if (i > 0)
                term *= -*a / i;
            d[static_cast<std::size_t>(t.power + i)] += term;
        }
    }
    series_.reserve(d.size());
    for (const auto &v : d)
        series_.push_back(static_cast<double>(v));
}

double ExpPoly::direct(double x, double &bound) const
{
    double sum = 0.0;
    bound = 0.0;
    for (const auto &t : terms_) {
        const double v = t.coefficient * std::pow(x, t.power) * std::exp(-t.rate * x);
        sum += v;
        bound += std::fabs(v);
    }
    return sum;
}

double ExpPoly::operator()(double x) const
{
    double bound = 0.0;
    const double value = direct(x, bound);
    if (series_.empty() || !(x <= kSeriesReach) || bound <= 4.0 * std::fabs(value))
        return value;

    double s = 0.0;
    double s_bound = 0.0;
    double xp = 1.0;
    for (double c : series_) {
        const double v = c * xp;
        s += v;
        s_bound += std::fabs(v);
        xp *= x;
    }
    return s_bound < bound ? s : value;
}

// Antiderivative vanishing at zero.
double ExpPoly::primitive(double x) const
{
    double value = 0.0;
    double bound = 0.0;
    for (const auto &t : terms_) {
        const double v = t.coefficient * lower_integral(t.power, t.rate, x);
        value += v;
        bound += std::fabs(v);
    }
    if (series_.empty() || !(x <= kSeriesReach) || bound <= 4.0 * std::fabs(value))
        return value;

    double s = 0.0;
    double s_bound = 0.0;
    double xp = x;
    for (std::size_t j = 0; j < series_.size(); ++j) {
        const double v = series_[j] * xp / static_cast<double>(j + 1);
        s += v;
        s_bound += std::fabs(v);
        xp *= x;
    }
    return s_bound < bound ? s : value;
}

double ExpPoly::integral(double a, double b) const
{
    return primitive(b) - primitive(a);
}

double ExpPoly::integral_to_infinity() const
{
    return integral(0.0, std::numeric_limits<double>::infinity());
}

} // namespace eeopa
