// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#include "eeopa/capacity.hpp"
#include "eeopa/error.hpp"
#include "eeopa/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

namespace eeopa {

SystemConfig::SystemConfig(AntennaConfig antenna, int n_subcarriers, int n_symbols, double bandwidth,
                           double frame_duration)
    : antenna_(antenna), n_subcarriers_(n_subcarriers), n_symbols_(n_symbols), bandwidth_(bandwidth),
      frame_duration_(frame_duration)
{
    require(n_subcarriers >= 1, "subcarrier count must be at least 1");
    require(n_symbols >= 1, "symbol count must be at least 1");
    require(std::isfinite(bandwidth) && bandwidth > 0.0, "bandwidth must be positive");
    require(std::isfinite(frame_duration) && frame_duration > 0.0, "frame duration must be positive");
}

namespace {

// Below this beta the expectation is evaluated as 1 + E[expm1(-beta L)].
constexpr double kSmallBeta = 1e-3;

std::vector<double> policy_breakpoints(const PowerPolicy &policy)
{
    if (policy.kind() == PowerPolicy::Kind::eeopa)
        return {policy.threshold()};
    return {};
}

QuadResult checked(QuadResult r, const char *what, const MarginalDensity &density)
{
    if (!r.converged) {
        std::ostringstream msg;
        msg << what << " did not converge for group " << density.group() << " of " << density.config().label()
            << " (estimate " << r.value << ", error " << r.abs_error << ")";
        throw NumericError(msg.str(), r.value, r.abs_error, r.intervals);
    }
    return r;
}

// Largest value of log integrand over a probe grid; used as the log-domain
// shift so the rescaled integrand peaks near 1.
double probe_log_peak(const std::function<double(double)> &log_f, double upper, std::span<const double> extra)
{
    double peak = -std::numeric_limits<double>::infinity();
    auto visit = [&](double x) {
        const double v = log_f(x);
        if (std::isfinite(v))
            peak = std::max(peak, v);
    };
    for (int i = 0; i <= 240; ++i)
        visit(std::pow(10.0, -12.0 + 12.0 * i / 240.0));
    for (int i = 1; i <= 400; ++i)
        visit(upper * i / 400.0);
    for (double x : extra) {
        visit(x);
        visit(x * (1.0 + 1e-6));
    }
    return peak;
}

} // namespace

double log_mgf_expectation(const PowerPolicy &policy, const MarginalDensity &density, double beta,
                           const Tolerance &tol)
{
    require(beta >= 0.0 && std::isfinite(beta), "beta must be nonnegative");
    if (policy.kind() == PowerPolicy::Kind::off || beta == 0.0)
        return 0.0;

    const double upper = density.tail_bound();
    const std::vector<double> bps = policy_breakpoints(policy);
    Tolerance local = tol;
    local.max_intervals = std::max(tol.max_intervals, 4000);

    if (beta < kSmallBeta) {
        auto g = [&](double x) { return std::expm1(-beta * policy.log1p_snr(x)) * density(x); };
        local.absolute = tol.absolute * beta * 1e-4;
        local.relative = 1e-10;
        const QuadResult r = checked(integrate_gain_axis(g, 0.0, upper, local, bps), "log-MGF integral", density);
        return std::min(0.0, std::log1p(r.value));
    }

    auto log_f = [&](double x) {
        const double p = density(x);
        if (!(p > 0.0))
            return -std::numeric_limits<double>::infinity();
        return -beta * policy.log1p_snr(x) + std::log(p);
    };
    const double shift = probe_log_peak(log_f, upper, bps);
    if (!std::isfinite(shift))
        fail(ErrorKind::numeric, "log-MGF integrand vanishes on the whole gain axis");

    auto f = [&](double x) {
        const double v = log_f(x);
        return std::isfinite(v) ? std::exp(v - shift) : 0.0;
    };
    local.absolute = tol.absolute * 1e-2;
    local.relative = 1e-10;
    const QuadResult r = checked(integrate_gain_axis(f, 0.0, upper, local, bps), "log-MGF integral", density);
    if (!(r.value > 0.0))
        fail(ErrorKind::numeric, "log-MGF integral is not positive");
    return std::min(0.0, shift + std::log(r.value));
}

double eeopa_log_mgf_simplified(double threshold, double beta, const MarginalDensity &density,
                                const Tolerance &tol)
{
    require(threshold > 0.0 && beta >= 0.0, "threshold must be positive and beta nonnegative");
    const double upper = density.tail_bound();
    const double below = density.mass(0.0, std::min(threshold, upper), tol);
    if (threshold >= upper)
        return std::log(below);

    const double exponent = -beta / (beta + 1.0);
    const double log_threshold = std::log(threshold);
    auto f = [&](double x) { return std::exp(exponent * (std::log(x) - log_threshold)) * density(x); };
    Tolerance local = tol;
    local.absolute = tol.absolute * 1e-2;
    local.relative = 1e-10;
    local.max_intervals = std::max(tol.max_intervals, 4000);
    const QuadResult r = checked(integrate_gain_axis(f, threshold, upper, local), "reduced log-MGF", density);
    return std::log(below + r.value);
}

double mean_spectral_efficiency(const PowerPolicy &policy, const MarginalDensity &density, const Tolerance &tol)
{
    if (policy.kind() == PowerPolicy::Kind::off)
        return 0.0;
    auto f = [&](double x) { return policy.log1p_snr(x) * density(x); };
    Tolerance local = tol;
    local.relative = std::max(tol.relative, 1e-12);
    local.max_intervals = std::max(tol.max_intervals, 4000);
    const QuadResult r = checked(integrate_gain_axis(f, 0.0, density.tail_bound(), local, policy_breakpoints(policy)),
                                 "mean rate integral", density);
    return r.value / std::numbers::ln2;
}

namespace {

// Inner quantity of one group; see EffectiveCapacityResult::inner.
double group_inner(const PowerPolicy &policy, const MarginalDensity &density, const QosParams &qos,
                   const SystemConfig &sys, const Tolerance &tol)
{
    if (qos.is_vanishing())
        return sys.frame_duration() * sys.bandwidth() * mean_spectral_efficiency(policy, density, tol);
    return log_mgf_expectation(policy, density, qos.beta(), tol);
}

double inner_to_capacity(double inner, const QosParams &qos, const SystemConfig &sys)
{
    const double n = sys.n_subcarriers();
    if (qos.is_vanishing())
        return n * inner;
    return std::max(0.0, -(n / qos.theta()) * inner);
}

} // namespace

double effective_capacity_group(const PowerPolicy &policy, const MarginalDensity &density, const QosParams &qos,
                                const SystemConfig &sys, const Tolerance &tol)
{
    return inner_to_capacity(group_inner(policy, density, qos, sys, tol), qos, sys);
}

EffectiveCapacityResult total_effective_capacity(std::span<const PowerPolicy> policies,
                                                 std::span<const MarginalDensity> densities, const QosParams &qos,
                                                 const SystemConfig &sys, const Tolerance &tol)
{
    const auto m = static_cast<std::size_t>(sys.antenna().m());
    require(policies.size() == m && densities.size() == m, "need one policy and one density per subchannel group");

    EffectiveCapacityResult out;
    out.theta = qos.theta();
    out.inner.assign(m, 0.0);
    out.per_group.assign(m, 0.0);
    for (std::size_t n = 0; n < m; ++n) {
        out.inner[n] = group_inner(policies[n], densities[n], qos, sys, tol);
        out.per_group[n] = inner_to_capacity(out.inner[n], qos, sys);
    }
    for (double c : out.per_group)
        out.total += c;
    return out;
}

double average_power_audit(const PowerPolicy &policy, const MarginalDensity &density, const Tolerance &tol)
{
    const double upper = density.tail_bound();
    switch (policy.kind()) {
    case PowerPolicy::Kind::off:
        return 0.0;
    case PowerPolicy::Kind::apa:
        return policy.p_bar() * density.mass(0.0, upper, tol);
    case PowerPolicy::Kind::eeopa:
        break;
    }
    const double lo = policy.threshold();
    if (lo >= upper)
        return 0.0;

    // Uniform pieces in log(lambda) from the threshold to the tail bound,
    // deliberately unrelated to the solver's own layout.
    auto g = [&](double u) {
        const double x = std::exp(u);
        return policy(x) * density(x) * x;
    };
    const double a = std::log(lo);
    const double b = std::log(upper);
    const int pieces = 64;
    Tolerance local = tol;
    local.absolute = tol.absolute * 1e-4 / pieces;
    local.relative = 1e-13;
    QuadResult total;
    for (int i = 0; i < pieces; ++i)
        total += integrate(g, a + (b - a) * i / pieces, a + (b - a) * (i + 1) / pieces, local);
    checked(total, "power audit integral", density);
    return total.value;
}

EnergyEfficiencyResult energy_efficiency(const EffectiveCapacityResult &cap, const PowerBudget &budget,
                                         const SystemConfig &sys)
{
    const double m = sys.antenna().m();
    EnergyEfficiencyResult out;
    out.components = cap;
    out.total_power = budget.p_bar() * m * sys.n_subcarriers();
    out.eta = cap.total / out.total_power;

    double sum = 0.0;
    for (double v : cap.inner)
        sum += v;
    if (cap.inner.empty())
        out.eta_explicit = out.eta;
    else if (cap.theta > 0.0)
        out.eta_explicit = std::max(0.0, -sum / (cap.theta * budget.p_bar() * m));
    else
        out.eta_explicit = sum / (budget.p_bar() * m);

    const double scale = std::max(std::fabs(out.eta), std::fabs(out.eta_explicit));
    if (std::fabs(out.eta - out.eta_explicit) > 1e-12 * scale + 1e-300) {
        std::ostringstream msg;
        msg << "energy efficiency cross-check failed: " << out.eta << " vs " << out.eta_explicit;
        fail(ErrorKind::numeric, msg.str());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo

namespace {

constexpr std::uint64_t kFramesPerShard = 1u << 14;

struct FrameTally {
    std::vector<double> mgf;  // sum of (1 + mu lambda)^{-beta} per group
    std::vector<double> rate; // sum of log(1 + mu lambda) per group
};

FrameTally run_frames(std::span<const PowerPolicy> policies, const AntennaConfig &antenna, double beta,
                      std::uint64_t seed, std::uint64_t stream, std::uint64_t frames)
{
    const auto m = policies.size();
    FrameTally t{std::vector<double>(m, 0.0), std::vector<double>(m, 0.0)};
    RandomStream rng(seed, stream);
    for (std::uint64_t f = 0; f < frames; ++f) {
        const OrderedGains g = ordered_gains(sample_channel_matrix(antenna, rng));
        for (std::size_t n = 0; n < m; ++n) {
            const double l = policies[n].log1p_snr(g[n]);
            t.mgf[n] += std::exp(-beta * l);
            t.rate[n] += l;
        }
    }
    return t;
}

struct CapacityJob {
    std::span<const PowerPolicy> policies;
    const QosParams &qos;
    const SystemConfig &sys;
    std::uint64_t frames;
    std::uint64_t shards;

    CapacityJob(std::span<const PowerPolicy> p, const QosParams &q, const SystemConfig &s, std::uint64_t n)
        : policies(p), qos(q), sys(s), frames(n), shards((n + kFramesPerShard - 1) / kFramesPerShard)
    {
        require(n >= 1, "frame count must be positive");
        require(p.size() == static_cast<std::size_t>(s.antenna().m()), "need one policy per subchannel group");
    }

    std::uint64_t frames_in(std::uint64_t k) const
    {
        return k + 1 < shards ? kFramesPerShard : frames - kFramesPerShard * (shards - 1);
    }

    FrameTally run(const RandomStream &rng, std::uint64_t k) const
    {
        return run_frames(policies, sys.antenna(), qos.beta(), rng.seed(), (rng.stream_id() << 20) + k,
                          frames_in(k));
    }

    CapacitySimulation merge(const std::vector<FrameTally> &tallies) const
    {
        const auto m = policies.size();
        const double n_sub = sys.n_subcarriers();
        const double bits_per_nat = sys.frame_duration() * sys.bandwidth() / std::numbers::ln2;
        CapacitySimulation out;
        out.frames = frames;
        out.per_group.assign(m, 0.0);
        out.mean_rate.assign(m, 0.0);
        for (std::size_t n = 0; n < m; ++n) {
            double mgf = 0.0;
            double rate = 0.0;
            for (const auto &t : tallies) {
                mgf += t.mgf[n];
                rate += t.rate[n];
            }
            mgf /= static_cast<double>(frames);
            rate /= static_cast<double>(frames);
            out.mean_rate[n] = n_sub * bits_per_nat * rate;
            out.per_group[n] = qos.is_vanishing() ? out.mean_rate[n]
                                                  : std::max(0.0, -(n_sub / qos.theta()) * std::log(mgf));
            out.total += out.per_group[n];
            out.total_mean_rate += out.mean_rate[n];
        }
        return out;
    }
};

} // namespace

CapacitySimulation simulate_effective_capacity(std::span<const PowerPolicy> policies, const QosParams &qos,
                                               const SystemConfig &sys, std::uint64_t frames,
                                               const RandomStream &rng)
{
    const CapacityJob job(policies, qos, sys, frames);
    std::vector<FrameTally> tallies(job.shards);
    parallel_for(static_cast<std::int64_t>(job.shards), [&](std::int64_t k) {
        tallies[static_cast<std::size_t>(k)] = job.run(rng, static_cast<std::uint64_t>(k));
    });
    return job.merge(tallies);
}

CapacitySimulation simulate_effective_capacity_serial(std::span<const PowerPolicy> policies, const QosParams &qos,
                                                      const SystemConfig &sys, std::uint64_t frames,
                                                      const RandomStream &rng)
{
    const CapacityJob job(policies, qos, sys, frames);
    std::vector<FrameTally> tallies;
    tallies.reserve(job.shards);
    for (std::uint64_t k = 0; k < job.shards; ++k)
        tallies.push_back(job.run(rng, k));
    return job.merge(tallies);
}

} // namespace eeopa
