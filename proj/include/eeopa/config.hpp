// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#pragma once

#include "eeopa/experiments.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace eeopa {

/// Everything a command needs. Defaults describe the 4x4 link at
/// theta = 1e-3, p_bar = 0.1, T_f = 1 ms, B = 1 MHz.
struct RunConfig {
    int m_t = 4;
    int m_r = 4;
    int n_subcarriers = 1;
    int n_symbols = 1;
    double bandwidth = 1e6;
    double frame_duration = 1e-3;
    double theta = 1e-3;
    double p_bar = 0.1;
    std::vector<double> theta_grid = default_theta_grid();
    std::vector<double> p_bar_grid = default_p_bar_grid();
    std::vector<Algorithm> algorithms{Algorithm::eeopa, Algorithm::apa};
    std::uint64_t seed = 1;
    std::string output_dir; ///< empty: left to the caller (environment, then ".")
    int threads = 0; ///< 0 = runtime default
    std::uint64_t mc_samples = 1'000'000;
    double quad_tolerance = 1e-8;

    Scenario scenario() const;
    SweepSpec sweep_spec() const;

    /// Throws invalid-input on out-of-range values.
    void validate() const;
};

/// Flat "key = value" text, one pair per line, '#' starts a comment. Lists
/// (theta_grid, p_bar_grid, algorithms) are comma separated. Unknown keys,
/// malformed values and out-of-range values raise a parse error naming the
/// line.
RunConfig parse_config(std::string_view text);

/// Applies one key/value to `config` with the same checks as parse_config.
void apply_setting(RunConfig &config, std::string_view key, std::string_view value);

RunConfig load_config_file(const std::string &path);

} // namespace eeopa
