// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#include "verify.hpp"

#include "eeopa/allocation.hpp"
#include "eeopa/capacity.hpp"
#include "eeopa/csv.hpp"
#include "eeopa/error.hpp"
#include "eeopa/marginals.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace eeopa::cli {

namespace {

constexpr double kPoints[] = {0.1, 1.0, 2.0, 5.0};

CheckOutcome normalization(const MarginalDensity &d)
{
    const double total = d.mass(0.0, d.tail_bound());
    std::ostringstream out;
    out << "integral " << format_number(total);
    return {d.config().label() + " group " + std::to_string(d.group()) + " normalization",
            std::fabs(total - 1.0) <= 1e-4, out.str()};
}

CheckOutcome against_quadrature(const MarginalDensity &d)
{
    double worst = 0.0;
    for (double x : kPoints)
        worst = std::max(worst, std::fabs(d(x) - quadrature_marginal_value(d.config(), d.group(), x)));
    std::ostringstream out;
    out << "max |closed - quadrature| " << format_number(worst);
    return {d.config().label() + " group " + std::to_string(d.group()) + " closed form vs quadrature",
            worst <= 1e-5, out.str()};
}

CheckOutcome against_histogram(const MarginalDensity &d, const EmpiricalDensity &h)
{
    const double l1 = l1_distance(h, d);
    std::ostringstream out;
    out << "L1 " << format_number(l1) << " over " << h.sample_count() << " samples";
    return {d.config().label() + " group " + std::to_string(d.group()) + " closed form vs Monte Carlo", l1 < 0.02,
            out.str()};
}

CheckOutcome power_audit(const MarginalDensity &d)
{
    const QosParams qos(1e-3, 1e-3, 1e6);
    const PowerBudget budget(0.1);
    const Threshold t = solve_threshold(qos.beta(), d, budget);
    const double used = average_power_audit(PowerPolicy::eeopa(t, qos.beta()), d);
    std::ostringstream out;
    out << "threshold " << format_number(t.lambda) << ", power " << format_number(used);
    return {d.config().label() + " group " + std::to_string(d.group()) + " power audit",
            std::fabs(used - 0.1) <= 1e-6 * 0.1, out.str()};
}

} // namespace

std::vector<CheckOutcome> run_verification(const VerifyOptions &options, std::ostream &report)
{
    std::vector<CheckOutcome> checks;
    std::uint64_t stream = 0;
    for (const auto &config : {AntennaConfig(2, 2), AntennaConfig(3, 2), AntennaConfig(4, 4)}) {
        const auto hist = mc_ordered_gain_histograms(config, options.mc_samples, RandomStream(options.seed, stream++));
        for (int n = 1; n <= config.m(); ++n) {
            const MarginalDensity d = closed_form_marginal(config, n);
            checks.push_back(normalization(d));
            checks.push_back(against_quadrature(d));
            checks.push_back(against_histogram(d, hist[static_cast<std::size_t>(n - 1)]));
            checks.push_back(power_audit(d));
        }
    }

    const FormulaAudit audit = audit_published_4x4();
    report << audit.report();
    const auto &g4 = audit.entries.back();
    checks.push_back({"4x4 group 4 published density at zero", published_marginal_4x4(4)(0.0) == 4.0,
                      "p(0) = " + format_number(published_marginal_4x4(4)(0.0)) + ", integral " +
                          format_number(g4.integral)});
    return checks;
}

} // namespace eeopa::cli
