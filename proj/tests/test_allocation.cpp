// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#include "eeopa/allocation.hpp"
#include "eeopa/error.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace eeopa;

namespace {

const MarginalDensity &group4()
{
    static const MarginalDensity d = closed_form_marginal(AntennaConfig(4, 4), 4);
    return d;
}

// Composite trapezoid on a uniform grid; shares nothing with the library
// integrator.
template <typename F>
double trapezoid(F f, double a, double b, int points)
{
    const double h = (b - a) / (points - 1);
    double s = 0.5 * (f(a) + f(b));
    for (int i = 1; i < points - 1; ++i)
        s += f(a + i * h);
    return s * h;
}

// Power spent by the threshold policy on p = 4 e^{-4x}, by Simpson's rule in
// log(x).
double simpson_lhs(double threshold, double beta)
{
    const double e = 1.0 / (beta + 1.0);
    auto g = [&](double u) {
        const double x = std::exp(u);
        return std::expm1(e * (u - std::log(threshold))) * 4.0 * std::exp(-4.0 * x);
    };
    const int n = 20000;
    const double a = std::log(threshold);
    const double b = std::log(80.0);
    const double h = (b - a) / n;
    double s = g(a) + g(b);
    for (int i = 1; i < n; ++i)
        s += (i % 2 ? 4.0 : 2.0) * g(a + i * h);
    return s * h / 3.0;
}

} // namespace

TEST_CASE("normalized exponent")
{
    CHECK(normalized_exponent(1e-3, 1e-3, 1e6) == doctest::Approx(1.0 / std::numbers::ln2).epsilon(1e-15));
    CHECK(normalized_exponent(1e-1, 1e-3, 1e6) == doctest::Approx(100.0 / std::numbers::ln2).epsilon(1e-15));
    CHECK(normalized_exponent(1e-12, 1e-3, 1e6) < 1e-8);
    CHECK_THROWS_AS(normalized_exponent(0.0, 1e-3, 1e6), Error);
    CHECK_THROWS_AS(normalized_exponent(1e-3, -1.0, 1e6), Error);

    const QosParams q(2e-3, 1e-3, 1e6);
    CHECK(q.beta() == 2e-3 * 1e-3 * 1e6 / std::numbers::ln2);
    CHECK_FALSE(q.is_vanishing());
    const QosParams v = QosParams::vanishing(1e-3, 1e6);
    CHECK(v.is_vanishing());
    CHECK(v.beta() == 0.0);
    CHECK_THROWS_AS(QosParams(-1.0, 1e-3, 1e6), Error);
}

TEST_CASE("power budget and APA policy")
{
    CHECK_THROWS_AS(PowerBudget(0.0), Error);
    CHECK_THROWS_AS(PowerBudget(-0.1), Error);
    const PowerPolicy apa = apa_power(PowerBudget(0.1));
    CHECK(apa.name() == "APA");
    for (double x : {0.0, 0.3, 7.0, 60.0})
        CHECK(apa(x) == 0.1);
    const double spent = integrate([&](double x) { return apa(x) * group4()(x); }, 0.0, 80.0).value;
    CHECK(spent == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("threshold policy shape")
{
    const double beta = 1.0 / std::numbers::ln2;
    const Threshold t{0.7, 1, 0.0, 0};
    const PowerPolicy p = PowerPolicy::eeopa(t, beta);
    CHECK(p.name() == "EEOPA");
    CHECK(p(0.7) == 0.0);
    CHECK(p(0.5) == 0.0);
    CHECK(p(0.0) == 0.0);
    CHECK(eeopa_power(t, beta, 0.7 * (1 + 1e-12)) < 1e-11);
    CHECK_THROWS_AS(eeopa_power(t, beta, -1.0), Error);
    double prev = 0.0;
    for (int i = 1; i <= 2000; ++i) {
        const double x = 0.01 * i;
        const double v = p(x);
        CHECK(v >= 0.0);
        CHECK(std::fabs(v - prev) < 0.05);
        prev = v;
        // closed form of the policy
        if (x >= 0.7)
            CHECK(std::fabs(v - (std::pow(0.7, -1.0 / (beta + 1)) * std::pow(x, -beta / (beta + 1)) - 1.0 / x)) <=
                  1e-14 + 1e-12 * v);
        // 1 + mu lambda = (lambda / Lambda)^{1/(beta+1)}
        CHECK(p.log1p_snr(x) == doctest::Approx(std::log1p(v * x)).epsilon(1e-12).scale(1e-14));
    }
}

TEST_CASE("small exponent approaches water-filling")
{
    const Threshold t{0.4, 1, 0.0, 0};
    const PowerPolicy p = PowerPolicy::eeopa(t, 1e-6);
    for (double x : {0.4, 0.5, 1.0, 3.0, 20.0})
        CHECK(std::fabs(p(x) - (1.0 / 0.4 - 1.0 / x)) < 1e-4);
    const PowerPolicy w = PowerPolicy::eeopa(t, 0.0);
    CHECK(w(2.0) == doctest::Approx(1.0 / 0.4 - 0.5).epsilon(1e-14));
}

TEST_CASE("constraint integral")
{
    const double beta = 1.0 / std::numbers::ln2;
    CHECK(constraint_lhs(80.0, beta, group4()).value == 0.0);
    CHECK(constraint_lhs(500.0, beta, group4()).value == 0.0);
    CHECK_THROWS_AS(constraint_lhs(0.0, beta, group4()), Error);

    // 30-digit value from tests/oracles/eeopa_reference.py
    const ConstraintValue v = constraint_lhs(0.5, beta, group4());
    CHECK_FALSE(v.divergent);
    CHECK(v.value == doctest::Approx(0.0259659097602026).epsilon(1e-10));

    const double e = 1.0 / (beta + 1.0);
    const double brute = trapezoid(
        [&](double x) { return (std::pow(0.5, -e) * std::pow(x, e - 1.0) - 1.0 / x) * 4.0 * std::exp(-4.0 * x); },
        0.5, 80.0, 1'000'000);
    CHECK(std::fabs(v.value - brute) < 1e-6);
}

TEST_CASE("constraint integral diverges like 1/Lambda for water-filling")
{
    const ConstraintValue small = constraint_lhs(1e-10, 0.0, group4());
    CHECK(small.divergent);
    CHECK(std::isfinite(small.value));
    CHECK(small.value == doctest::Approx(1e10).epsilon(1e-6));
    CHECK_FALSE(constraint_lhs(1e-3, 0.0, group4()).divergent);
}

TEST_CASE("constraint integral strictly decreases in the threshold")
{
    for (const auto &c : {AntennaConfig(2, 2), AntennaConfig(3, 2), AntennaConfig(4, 4)}) {
        for (int n = 1; n <= c.m(); ++n) {
            const MarginalDensity d = closed_form_marginal(c, n);
            double prev = std::numeric_limits<double>::infinity();
            for (int i = 0; i < 100; ++i) {
                const double lambda = std::exp(std::log(1e-3) + (std::log(c.tail_bound() / 4) - std::log(1e-3)) * i / 99);
                const double v = constraint_lhs(lambda, 1.0, d).value;
                CHECK(v < prev);
                prev = v;
            }
        }
    }
}

TEST_CASE("solved threshold: grid-scan oracle")
{
    const double beta = 1.0 / std::numbers::ln2;
    const Threshold t = solve_threshold(beta, group4(), PowerBudget(0.1));
    CHECK(t.group == 4);
    CHECK(t.residual <= 1e-6 * 0.1);

    // Scan, locate the sign change, refine by bisection.
    double lo = 1e-6, hi = 80.0;
    const int scan = 400;
    for (int i = 0; i < scan; ++i) {
        const double a = 1e-6 * std::pow(80.0 / 1e-6, static_cast<double>(i) / scan);
        const double b = 1e-6 * std::pow(80.0 / 1e-6, static_cast<double>(i + 1) / scan);
        if (simpson_lhs(a, beta) >= 0.1 && simpson_lhs(b, beta) < 0.1) {
            lo = a;
            hi = b;
            break;
        }
    }
    for (int k = 0; k < 60; ++k) {
        const double mid = std::sqrt(lo * hi);
        (simpson_lhs(mid, beta) >= 0.1 ? lo : hi) = mid;
    }
    CHECK(t.lambda == doctest::Approx(std::sqrt(lo * hi)).epsilon(1e-6));
}

TEST_CASE("solved thresholds match the reference values")
{
    const AntennaConfig c(4, 4);
    const QosParams q(1e-3, 1e-3, 1e6);
    const double expected[] = {1.83039430610123, 1.68462093210572, 0.98625542530119, 0.321690370106007};
    for (int n = 1; n <= 4; ++n)
        CHECK(solve_threshold(q.beta(), closed_form_marginal(c, n), PowerBudget(0.1)).lambda ==
              doctest::Approx(expected[n - 1]).epsilon(1e-7));

    // Strict exponents drive the strongest group's cutoff toward zero.
    const QosParams strict(0.1, 1e-3, 1e6);
    const double tiny[] = {2.54741992026913e-40, 6.07654397763819e-21, 8.67955655011853e-8, 0.0129802608715243};
    for (int n = 1; n <= 4; ++n) {
        const Threshold t = solve_threshold(strict.beta(), closed_form_marginal(c, n), PowerBudget(0.1));
        CHECK(t.lambda == doctest::Approx(tiny[n - 1]).epsilon(1e-7));
        CHECK(t.residual <= 1e-9 * 0.1);
    }
}

TEST_CASE("threshold trends")
{
    const MarginalDensity &d = group4();
    const double b3 = normalized_exponent(1e-3, 1e-3, 1e6);
    CHECK(solve_threshold(b3, d, PowerBudget(0.2)).lambda < solve_threshold(b3, d, PowerBudget(0.1)).lambda);
    CHECK(solve_threshold(normalized_exponent(1e-2, 1e-3, 1e6), d, PowerBudget(0.1)).lambda <
          solve_threshold(normalized_exponent(1e-4, 1e-3, 1e6), d, PowerBudget(0.1)).lambda);
}

TEST_CASE("infeasible budget")
{
    // With beta = 0 the constraint grows like 1/Lambda; a floor of 1e-6 caps
    // it near 1e6.
    SolverOptions opts;
    opts.min_threshold = 1e-6;
    opts.initial_lower = 1e-3;
    try {
        solve_threshold(0.0, group4(), PowerBudget(1e9), opts);
        FAIL("expected infeasible budget");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::infeasible_budget);
    }
}

TEST_CASE("threshold CSV")
{
    std::ostringstream out;
    write_threshold_csv(out, {{"4x4", 2, 1e-3, 0.1, 1.5, 1e-12}});
    CHECK(out.str() == "config,group,theta,p_bar,lambda_n,residual\n4x4,2,0.001,0.1,1.5,1e-12\n");
}
