// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#include "eeopa/allocation.hpp"
#include "eeopa/csv.hpp"
#include "eeopa/error.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace eeopa {

double normalized_exponent(double theta, double frame_duration, double bandwidth)
{
    require(theta > 0.0 && frame_duration > 0.0 && bandwidth > 0.0,
            "theta, frame duration and bandwidth must be positive");
    return theta * frame_duration * bandwidth / std::numbers::ln2;
}

QosParams::QosParams(double theta, double frame_duration, double bandwidth)
    : theta_(theta), frame_duration_(frame_duration), bandwidth_(bandwidth),
      beta_(normalized_exponent(theta, frame_duration, bandwidth))
{
}

QosParams QosParams::vanishing(double frame_duration, double bandwidth)
{
    require(frame_duration > 0.0 && bandwidth > 0.0, "frame duration and bandwidth must be positive");
    QosParams q;
    q.frame_duration_ = frame_duration;
    q.bandwidth_ = bandwidth;
    q.vanishing_ = true;
    return q;
}

PowerBudget::PowerBudget(double p_bar) : p_bar_(p_bar)
{
    require(std::isfinite(p_bar) && p_bar > 0.0, "average power constraint must be positive");
}

PowerPolicy PowerPolicy::eeopa(const Threshold &threshold, double beta)
{
    require(threshold.lambda > 0.0 && std::isfinite(threshold.lambda), "threshold must be positive");
    require(beta >= 0.0 && std::isfinite(beta), "beta must be nonnegative");
    return PowerPolicy(Kind::eeopa, threshold.lambda, beta, 0.0);
}

PowerPolicy PowerPolicy::apa(const PowerBudget &budget)
{
    return PowerPolicy(Kind::apa, 0.0, 0.0, budget.p_bar());
}

PowerPolicy PowerPolicy::off()
{
    return PowerPolicy(Kind::off, 0.0, 0.0, 0.0);
}

std::string_view PowerPolicy::name() const noexcept
{
    switch (kind_) {
    case Kind::eeopa: return "EEOPA";
    case Kind::apa: return "APA";
    case Kind::off: return "OFF";
    }
    return "?";
}

double PowerPolicy::operator()(double lambda) const
{
    switch (kind_) {
    case Kind::eeopa:
        if (lambda < threshold_ || lambda <= 0.0)
            return 0.0;
        // (lambda/Lambda)^{1/(beta+1)} / lambda - 1/lambda
        return std::expm1(std::log(lambda / threshold_) / (beta_ + 1.0)) / lambda;
    case Kind::apa:
        return p_bar_;
    case Kind::off:
        return 0.0;
    }
    return 0.0;
}

double PowerPolicy::log1p_snr(double lambda) const
{
    switch (kind_) {
    case Kind::eeopa:
        if (lambda < threshold_ || lambda <= 0.0)
            return 0.0;
        return std::log(lambda / threshold_) / (beta_ + 1.0);
    case Kind::apa:
        return std::log1p(p_bar_ * std::max(lambda, 0.0));
    case Kind::off:
        return 0.0;
    }
    return 0.0;
}

double eeopa_power(const Threshold &threshold, double beta, double lambda)
{
    require(lambda >= 0.0, "gain must be nonnegative");
    return PowerPolicy::eeopa(threshold, beta)(lambda);
}

PowerPolicy apa_power(const PowerBudget &budget)
{
    return PowerPolicy::apa(budget);
}

ConstraintValue constraint_lhs(double threshold, double beta, const MarginalDensity &density, const Tolerance &tol)
{
    require(threshold > 0.0, "threshold candidate must be positive");
    require(beta >= 0.0, "beta must be nonnegative");
    ConstraintValue out;
    out.divergent = threshold < kDivergenceThreshold;
    const double upper = density.tail_bound();
    if (threshold >= upper)
        return out;

    const double exponent = 1.0 / (beta + 1.0);
    const double log_threshold = std::log(threshold);
    auto integrand = [&](double lambda) {
        if (lambda <= threshold)
            return 0.0;
        return std::expm1(exponent * (std::log(lambda) - log_threshold)) / lambda * density(lambda);
    };
    const QuadResult r = integrate_gain_axis(integrand, threshold, upper, tol);
    if (!r.converged) {
        std::ostringstream msg;
        msg << "power-constraint integral did not converge (threshold " << threshold << ", beta " << beta
            << ", group " << density.group() << ")";
        throw NumericError(msg.str(), r.value, r.abs_error, r.intervals);
    }
    out.value = r.value;
    out.abs_error = r.abs_error;
    return out;
}

Threshold solve_threshold(double beta, const MarginalDensity &density, const PowerBudget &budget,
                          const SolverOptions &options)
{
    require(beta >= 0.0 && std::isfinite(beta), "beta must be nonnegative");
    const double p_bar = budget.p_bar();
    Tolerance tol;
    tol.absolute = options.quad_fraction * p_bar;
    tol.relative = 1e-12;
    tol.max_intervals = 4000;

    auto excess = [&](double log_lambda) {
        return constraint_lhs(std::exp(log_lambda), beta, density, tol).value - p_bar;
    };

    double hi = std::log(density.tail_bound()); // excess(hi) = -p_bar < 0
    double lo = std::log(options.initial_lower);
    const double floor = std::log(options.min_threshold);
    double f_lo = excess(lo);
    int iterations = 1;
    while (f_lo < 0.0) {
        hi = lo;
        lo -= std::log(1e8);
        if (lo < floor) {
            std::ostringstream msg;
            msg << "average power " << p_bar << " exceeds what group " << density.group()
                << " can spend for any threshold above " << options.min_threshold;
            fail(ErrorKind::infeasible_budget, msg.str());
        }
        f_lo = excess(lo);
        ++iterations;
    }

    const double target = options.relative_residual * p_bar;
    if (std::fabs(f_lo) <= target)
        return {std::exp(lo), density.group(), std::fabs(f_lo), iterations};

    for (; iterations < options.max_iterations; ++iterations) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = excess(mid);
        if (std::fabs(f_mid) <= target)
            return {std::exp(mid), density.group(), std::fabs(f_mid), iterations + 1};
        if (f_mid > 0.0)
            lo = mid;
        else
            hi = mid;
        // Bracket collapsed to adjacent doubles in log(Lambda).
        if (!(lo < 0.5 * (lo + hi) && 0.5 * (lo + hi) < hi)) {
            const double f = excess(mid);
            if (std::fabs(f) <= 1e-6 * p_bar)
                return {std::exp(mid), density.group(), std::fabs(f), iterations + 1};
            break;
        }
    }
    std::ostringstream msg;
    msg << "threshold bisection failed for group " << density.group() << " (beta " << beta << ", p_bar " << p_bar
        << ")";
    fail(ErrorKind::numeric, msg.str());
}

void write_threshold_csv(std::ostream &out, const std::vector<ThresholdRow> &rows)
{
    out << "config,group,theta,p_bar,lambda_n,residual\n";
    for (const auto &r : rows)
        out << r.config << ',' << r.group << ',' << format_number(r.theta) << ',' << format_number(r.p_bar) << ','
            << format_number(r.lambda_n) << ',' << format_number(r.residual) << '\n';
}

} // namespace eeopa
