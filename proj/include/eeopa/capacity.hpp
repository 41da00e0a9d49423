// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#pragma once

#include "eeopa/allocation.hpp"
#include "eeopa/channel.hpp"
#include "eeopa/marginals.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace eeopa {

/// Link dimensions. The OFDM symbol count is carried for bookkeeping only:
/// capacities are per frame and never scale with it.
class SystemConfig {
public:
    SystemConfig(AntennaConfig antenna, int n_subcarriers, int n_symbols, double bandwidth, double frame_duration);

    const AntennaConfig &antenna() const noexcept { return antenna_; }
    int n_subcarriers() const noexcept { return n_subcarriers_; }
    int n_symbols() const noexcept { return n_symbols_; }
    double bandwidth() const noexcept { return bandwidth_; }
    double frame_duration() const noexcept { return frame_duration_; }

private:
    AntennaConfig antenna_;
    int n_subcarriers_;
    int n_symbols_;
    double bandwidth_;
    double frame_duration_;
};

/// Per-group effective capacities in bits per frame, each already summed
/// over the N subcarriers of the group.
struct EffectiveCapacityResult {
    std::vector<double> per_group;
    double total = 0.0;
    double theta = 0.0; ///< 0 in the vanishing-exponent mode
    /// Per group: log E[(1 + mu lambda)^{-beta}], or in the vanishing mode
    /// the mean rate T_f B E[log2(1 + mu lambda)] of one subchannel.
    std::vector<double> inner;
};

struct EnergyEfficiencyResult {
    double eta = 0.0;          ///< bits per frame per unit power
    double eta_explicit = 0.0; ///< same quantity through the log-expectation form
    double total_power = 0.0;  ///< p_bar * M * N
    EffectiveCapacityResult components;
};

/// log E[(1 + mu(lambda) lambda)^{-beta}] under `density`, accumulated in the
/// log domain (integrand rescaled by its peak before integration).
double log_mgf_expectation(const PowerPolicy &policy, const MarginalDensity &density, double beta,
                           const Tolerance &tol = {});

/// The same expectation for the threshold policy via its reduced form
///   int_0^Lambda p + int_Lambda^inf (lambda/Lambda)^{-beta/(beta+1)} p.
double eeopa_log_mgf_simplified(double threshold, double beta, const MarginalDensity &density,
                                const Tolerance &tol = {});

/// E[log2(1 + mu(lambda) lambda)] under `density`.
double mean_spectral_efficiency(const PowerPolicy &policy, const MarginalDensity &density,
                                const Tolerance &tol = {});

/// -(N/theta) log E[e^{-theta R}] with R = T_f B log2(1 + mu lambda); in the
/// vanishing-exponent mode, the Shannon average N T_f B E[log2(1 + mu lambda)].
double effective_capacity_group(const PowerPolicy &policy, const MarginalDensity &density, const QosParams &qos,
                                const SystemConfig &sys, const Tolerance &tol = {});

EffectiveCapacityResult total_effective_capacity(std::span<const PowerPolicy> policies,
                                                 std::span<const MarginalDensity> densities, const QosParams &qos,
                                                 const SystemConfig &sys, const Tolerance &tol = {});

/// Average power the policy spends under the density.
double average_power_audit(const PowerPolicy &policy, const MarginalDensity &density, const Tolerance &tol = {});

/// eta = C_total / (p_bar M N), cross-checked against
/// -1/(theta p_bar M) * sum_n log E_n to 1e-12 relative.
EnergyEfficiencyResult energy_efficiency(const EffectiveCapacityResult &cap, const PowerBudget &budget,
                                         const SystemConfig &sys);

/// Frame-level Monte Carlo estimate of the same quantities: per-group
/// capacities from the sample mean of e^{-theta R}, and the mean rate.
struct CapacitySimulation {
    std::vector<double> per_group;      ///< bits per frame, times N
    std::vector<double> mean_rate;      ///< bits per frame, times N (Shannon average)
    double total = 0.0;
    double total_mean_rate = 0.0;
    std::uint64_t frames = 0;
};

/// Samples `frames` channels, sorts their gains, applies policies[n] to the
/// n-th gain. Sharded like the histogram kernel (2^14 frames per shard,
/// stream (stream_id << 20) + k); parallel over shards.
CapacitySimulation simulate_effective_capacity(std::span<const PowerPolicy> policies, const QosParams &qos,
                                               const SystemConfig &sys, std::uint64_t frames,
                                               const RandomStream &rng);

/// Single-threaded reference with identical shards and output.
CapacitySimulation simulate_effective_capacity_serial(std::span<const PowerPolicy> policies, const QosParams &qos,
                                                      const SystemConfig &sys, std::uint64_t frames,
                                                      const RandomStream &rng);

} // namespace eeopa
