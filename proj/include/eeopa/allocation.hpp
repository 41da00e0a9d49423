// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#pragma once

#include "eeopa/marginals.hpp"
#include "eeopa/quadrature.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace eeopa {

/// beta = theta * t_f * b / ln 2. All inputs must be positive.
double normalized_exponent(double theta, double frame_duration, double bandwidth);

/// QoS exponent together with the frame/bandwidth it is normalized by.
/// The theta -> 0 limit is a separate mode (vanishing()) with beta = 0 and
/// Shannon-average capacities; theta itself is never set to zero.
class QosParams {
public:
    QosParams(double theta, double frame_duration, double bandwidth);

    static QosParams vanishing(double frame_duration, double bandwidth);

    bool is_vanishing() const noexcept { return vanishing_; }
    double theta() const noexcept { return theta_; } ///< 1/bits; 0 in vanishing mode
    double frame_duration() const noexcept { return frame_duration_; }
    double bandwidth() const noexcept { return bandwidth_; }
    double beta() const noexcept { return beta_; }

private:
    QosParams() = default;

    double theta_ = 0.0;
    double frame_duration_ = 0.0;
    double bandwidth_ = 0.0;
    double beta_ = 0.0;
    bool vanishing_ = false;
};

/// Average transmission power per subchannel (normalized units, > 0).
class PowerBudget {
public:
    explicit PowerBudget(double p_bar);
    double p_bar() const noexcept { return p_bar_; }

private:
    double p_bar_;
};

/// Solved channel-gain cutoff of one subchannel group.
struct Threshold {
    double lambda = 0.0;
    int group = 0;
    double residual = 0.0; ///< |constraint_lhs(lambda) - p_bar|
    int iterations = 0;
};

/// Power as a function of subchannel gain: the QoS-aware threshold policy,
/// the constant (average power) policy, or no transmission at all.
class PowerPolicy {
public:
    enum class Kind { eeopa, apa, off };

    /// mu(lambda) = Lambda^{-1/(beta+1)} lambda^{-beta/(beta+1)} - 1/lambda
    /// for lambda >= Lambda, else 0. beta = 0 is plain water-filling.
    static PowerPolicy eeopa(const Threshold &threshold, double beta);
    static PowerPolicy apa(const PowerBudget &budget);
    static PowerPolicy off();

    Kind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept;
    double threshold() const noexcept { return threshold_; }
    double beta() const noexcept { return beta_; }
    double p_bar() const noexcept { return p_bar_; }

    double operator()(double lambda) const;

    /// log(1 + mu(lambda) * lambda), computed without cancellation.
    double log1p_snr(double lambda) const;

private:
    PowerPolicy(Kind kind, double threshold, double beta, double p_bar)
        : kind_(kind), threshold_(threshold), beta_(beta), p_bar_(p_bar) {}

    Kind kind_;
    double threshold_;
    double beta_;
    double p_bar_;
};

double eeopa_power(const Threshold &threshold, double beta, double lambda);
PowerPolicy apa_power(const PowerBudget &budget);

/// Below this threshold the constraint integral is reported as divergent:
/// it grows without bound as Lambda -> 0 (like 1/Lambda for beta = 0).
inline constexpr double kDivergenceThreshold = 1e-8;

struct ConstraintValue {
    double value = 0.0;
    double abs_error = 0.0;
    bool divergent = false;
};

/// Average power spent by the threshold policy with cutoff `threshold`:
/// integral over [Lambda, tail_bound] of mu(lambda) p(lambda). Strictly
/// decreasing in Lambda; zero once Lambda reaches the tail bound.
ConstraintValue constraint_lhs(double threshold, double beta, const MarginalDensity &density,
                               const Tolerance &tol = {1e-10, 1e-12, 4000});

struct SolverOptions {
    /// Stop once |lhs - p_bar| <= relative_residual * p_bar.
    double relative_residual = 1e-9;
    /// First lower bracket; lowered by 1e8 per step while still infeasible.
    double initial_lower = 1e-8;
    double min_threshold = 1e-300;
    int max_iterations = 400;
    /// Absolute quadrature tolerance, as a fraction of p_bar.
    double quad_fraction = 1e-10;
};

/// Cutoff Lambda_n with constraint_lhs(Lambda_n) = p_bar, by bisection in
/// log(Lambda). Throws infeasible-budget if no bracket down to
/// min_threshold reaches p_bar.
Threshold solve_threshold(double beta, const MarginalDensity &density, const PowerBudget &budget,
                          const SolverOptions &options = {});

struct ThresholdRow {
    std::string config;
    int group = 0;
    double theta = 0.0;
    double p_bar = 0.0;
    double lambda_n = 0.0;
    double residual = 0.0;
};

/// CSV with header config,group,theta,p_bar,lambda_n,residual.
void write_threshold_csv(std::ostream &out, const std::vector<ThresholdRow> &rows);

} // namespace eeopa
