// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#pragma once

#include "eeopa/allocation.hpp"
#include "eeopa/capacity.hpp"
#include "eeopa/channel.hpp"
#include "eeopa/marginals.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace eeopa {

struct Scenario {
    AntennaConfig antenna{4, 4};
    int n_subcarriers = 1;
    double bandwidth = 1e6;
    double frame_duration = 1e-3;

    std::string name() const { return antenna.label(); }
    SystemConfig system() const;
};

enum class Algorithm { eeopa, apa };

const char *to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view text);

/// Group marginals for a scenario, one per group in gain order.
std::vector<MarginalDensity> scenario_marginals(const Scenario &scenario, const RandomStream &rng,
                                                std::uint64_t mc_samples = 1'000'000);

struct EeopaRun {
    std::vector<Threshold> thresholds;
    std::vector<PowerPolicy> policies;
    std::vector<double> power_audit;
    EffectiveCapacityResult capacity;
    EnergyEfficiencyResult efficiency;
};

struct ApaRun {
    std::vector<PowerPolicy> policies;
    std::vector<double> power_audit;
    EffectiveCapacityResult capacity;
    EnergyEfficiencyResult efficiency;
};

/// Solves one threshold per group, builds the policies and evaluates group
/// capacities and the energy efficiency. The vanishing-exponent mode uses
/// water-filling thresholds (beta = 0).
EeopaRun run_eeopa(const Scenario &scenario, const QosParams &qos, const PowerBudget &budget,
                   std::span<const MarginalDensity> marginals, const Tolerance &tol = {});
EeopaRun run_eeopa(const Scenario &scenario, const QosParams &qos, const PowerBudget &budget);

ApaRun run_apa(const Scenario &scenario, const QosParams &qos, const PowerBudget &budget,
               std::span<const MarginalDensity> marginals, const Tolerance &tol = {});
ApaRun run_apa(const Scenario &scenario, const QosParams &qos, const PowerBudget &budget);

struct SweepSpec {
    Scenario scenario;
    std::vector<double> theta_grid;
    std::vector<double> p_bar_grid;
    std::vector<Algorithm> algorithms{Algorithm::eeopa, Algorithm::apa};
    std::uint64_t seed = 1;
    std::uint64_t stream_id = 0;
    std::uint64_t mc_samples = 1'000'000;
    Tolerance tolerance{};

    /// Throws invalid-input unless both grids are non-empty, positive and
    /// strictly ascending and at least one algorithm is selected.
    void validate() const;
};

struct SweepRow {
    std::string scenario;
    int m_t = 0;
    int m_r = 0;
    double theta = 0.0;
    double p_bar = 0.0;
    int group = 0;
    double lambda_n = 0.0; ///< nan for APA
    double c_group = 0.0;
    double c_total = 0.0;
    double eta = 0.0;
    std::string algorithm;
    std::string status; ///< "ok" or "error"

    friend bool operator==(const SweepRow &, const SweepRow &) = default;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<std::string> errors;
    /// seed, stream, tolerance and density sources used.
    std::vector<std::pair<std::string, std::string>> provenance;
};

/// Evaluates every (theta, p_bar, algorithm) point in parallel. A failing
/// point becomes one "error" row per group; the sweep carries on. Rows come
/// back sorted by (theta, p_bar, algorithm, group).
SweepResult sweep(const SweepSpec &spec);

/// Same sweep with the group marginals supplied by the caller.
SweepResult sweep(const SweepSpec &spec, std::span<const MarginalDensity> marginals);

inline constexpr const char *kSweepHeader =
    "scenario,m_t,m_r,theta,p_bar,group,lambda_n,c_group,c_total,eta,algorithm,status";

void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows);
std::vector<SweepRow> read_sweep_csv(std::istream &in);

/// Provenance as "# key = value" lines.
void write_provenance(std::ostream &out, const SweepResult &result);

/// theta = 10^(-5 + 4i/6), i = 0..6.
std::vector<double> default_theta_grid();
/// p_bar = 0.05 (i + 1), i = 0..9.
std::vector<double> default_p_bar_grid();

/// True when lambda_1 > lambda_2 > ... > lambda_M (thresholds follow the
/// gain order).
bool fully_gain_ordered(std::span<const double> thresholds);

/// First grid interval [grid[i], grid[i+1]] on which `flags` switches from
/// true to false.
std::optional<std::pair<double, double>> ordering_transition(std::span<const double> grid,
                                                             const std::vector<bool> &flags);

/// Thresholds of one algorithm's rows at (theta, p_bar), ordered by group.
std::vector<double> thresholds_at(const std::vector<SweepRow> &rows, double theta, double p_bar);

/// gnuplot script drawing capacity and efficiency against theta and p_bar,
/// and thresholds against the group index, from `csv_name`.
void write_gnuplot_script(std::ostream &out, const std::string &csv_name);

} // namespace eeopa
