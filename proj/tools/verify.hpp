// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace eeopa::cli {

struct CheckOutcome {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    std::uint64_t mc_samples = 1'000'000;
};

/// Closed forms against nested quadrature and Monte Carlo histograms for the
/// three tabulated configurations, plus a solved-policy power audit. The
/// published 4x4 audit is written to `report` but does not fail the run.
std::vector<CheckOutcome> run_verification(const VerifyOptions &options, std::ostream &report);

} // namespace eeopa::cli
