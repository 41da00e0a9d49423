// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#include "eeopa/capacity.hpp"
#include "eeopa/error.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace eeopa;

namespace {

std::vector<MarginalDensity> marginals(const AntennaConfig &c)
{
    std::vector<MarginalDensity> out;
    for (int n = 1; n <= c.m(); ++n)
        out.push_back(closed_form_marginal(c, n));
    return out;
}

std::vector<PowerPolicy> eeopa_policies(const std::vector<MarginalDensity> &ds, const QosParams &q, double p_bar)
{
    std::vector<PowerPolicy> out;
    for (const auto &d : ds)
        out.push_back(PowerPolicy::eeopa(solve_threshold(q.beta(), d, PowerBudget(p_bar)), q.beta()));
    return out;
}

} // namespace

TEST_CASE("system configuration validation")
{
    CHECK_NOTHROW(SystemConfig(AntennaConfig(2, 2), 1, 1, 1e6, 1e-3));
    CHECK_THROWS_AS(SystemConfig(AntennaConfig(2, 2), 0, 1, 1e6, 1e-3), Error);
    CHECK_THROWS_AS(SystemConfig(AntennaConfig(2, 2), 1, 0, 1e6, 1e-3), Error);
    CHECK_THROWS_AS(SystemConfig(AntennaConfig(2, 2), 1, 1, 0.0, 1e-3), Error);
    CHECK_THROWS_AS(SystemConfig(AntennaConfig(2, 2), 1, 1, 1e6, -1.0), Error);
}

TEST_CASE("zero policy carries nothing")
{
    const AntennaConfig c(2, 2);
    const SystemConfig sys(c, 4, 10, 1e6, 1e-3);
    const QosParams q(1e-3, 1e-3, 1e6);
    const auto ds = marginals(c);
    const std::vector<PowerPolicy> off{PowerPolicy::off(), PowerPolicy::off()};
    CHECK(effective_capacity_group(off[0], ds[0], q, sys) == 0.0);
    const auto r = total_effective_capacity(off, ds, q, sys);
    CHECK(r.total == 0.0);
    CHECK(energy_efficiency(r, PowerBudget(0.1), sys).eta == 0.0);
    CHECK(average_power_audit(off[0], ds[0]) == 0.0);
}

TEST_CASE("reduced and direct threshold-policy expectations agree")
{
    const AntennaConfig c(4, 4);
    for (double theta : {1e-5, 1e-3, 2e-2, 1e-1}) {
        const QosParams q(theta, 1e-3, 1e6);
        const auto ds = marginals(c);
        const auto ps = eeopa_policies(ds, q, 0.1);
        for (std::size_t n = 0; n < ds.size(); ++n) {
            const double direct = log_mgf_expectation(ps[n], ds[n], q.beta());
            const double reduced = eeopa_log_mgf_simplified(ps[n].threshold(), q.beta(), ds[n]);
            CHECK(std::exp(direct) == doctest::Approx(std::exp(reduced)).epsilon(1e-8));
            CHECK(direct == doctest::Approx(reduced).epsilon(1e-8));
        }
    }
}

TEST_CASE("reference capacities and efficiencies")
{
    // 30-digit values from tests/oracles/eeopa_reference.py
    struct Case {
        int m_t, m_r;
        double theta, p_bar, c_eeopa, c_apa;
    };
    const Case cases[] = {
        {4, 4, 1e-3, 0.1, 1761.89758832291, 1696.91539016836},
        {4, 4, 0.1, 0.1, 1583.47807213721, 614.825174575697},
        {4, 4, 1e-5, 0.5, 5313.03749845247, 5124.22601885986},
        {2, 2, 1e-3, 0.1, 534.830662804601, 471.372705298615},
        {3, 2, 1e-3, 0.1, 733.729210413093, 686.821106026571},
    };
    for (const auto &k : cases) {
        CAPTURE(k.m_t);
        CAPTURE(k.theta);
        const AntennaConfig c(k.m_t, k.m_r);
        const SystemConfig sys(c, 1, 1, 1e6, 1e-3);
        const QosParams q(k.theta, 1e-3, 1e6);
        const auto ds = marginals(c);
        const auto ee = total_effective_capacity(eeopa_policies(ds, q, k.p_bar), ds, q, sys);
        const std::vector<PowerPolicy> apa(ds.size(), PowerPolicy::apa(PowerBudget(k.p_bar)));
        const auto ap = total_effective_capacity(apa, ds, q, sys);
        CHECK(ee.total == doctest::Approx(k.c_eeopa).epsilon(1e-8));
        CHECK(ap.total == doctest::Approx(k.c_apa).epsilon(1e-8));
        const auto eta = energy_efficiency(ee, PowerBudget(k.p_bar), sys);
        CHECK(eta.eta == doctest::Approx(k.c_eeopa / (k.p_bar * c.m())).epsilon(1e-8));
        CHECK(eta.eta == eta.components.total / eta.total_power);
    }
}

TEST_CASE("total is the sum of the groups; length mismatch is rejected")
{
    const AntennaConfig c(3, 2);
    const SystemConfig sys(c, 3, 1, 1e6, 1e-3);
    const QosParams q(1e-3, 1e-3, 1e6);
    const auto ds = marginals(c);
    const auto ps = eeopa_policies(ds, q, 0.2);
    const auto r = total_effective_capacity(ps, ds, q, sys);
    CHECK(r.total == r.per_group[0] + r.per_group[1]);
    CHECK(r.per_group[0] == effective_capacity_group(ps[0], ds[0], q, sys));
    CHECK(r.theta == 1e-3);
    for (double v : r.per_group)
        CHECK(v >= 0.0);
    const std::vector<PowerPolicy> one{ps[0]};
    CHECK_THROWS_AS(total_effective_capacity(one, ds, q, sys), Error);
}

TEST_CASE("single-group system reduces to the group capacity")
{
    const AntennaConfig c(1, 3);
    const SystemConfig sys(c, 1, 1, 1e6, 1e-3);
    const QosParams q(1e-3, 1e-3, 1e6);
    const std::vector<MarginalDensity> ds{quadrature_marginal(c, 1)};
    const std::vector<PowerPolicy> ps{PowerPolicy::eeopa(solve_threshold(q.beta(), ds[0], PowerBudget(0.1)), q.beta())};
    const auto r = total_effective_capacity(ps, ds, q, sys);
    CHECK(r.total == effective_capacity_group(ps[0], ds[0], q, sys));
    CHECK(r.total > 0.0);
}

TEST_CASE("power audit")
{
    const AntennaConfig c(4, 4);
    const auto ds = marginals(c);
    for (double theta : {1e-5, 1e-3, 1e-1}) {
        const QosParams q(theta, 1e-3, 1e6);
        const auto ps = eeopa_policies(ds, q, 0.3);
        for (std::size_t n = 0; n < ds.size(); ++n)
            CHECK(average_power_audit(ps[n], ds[n]) == doctest::Approx(0.3).epsilon(1e-6));
    }
    CHECK(average_power_audit(PowerPolicy::apa(PowerBudget(0.1)), ds[0]) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("energy efficiency does not depend on the subcarrier count")
{
    const AntennaConfig c(2, 2);
    const QosParams q(1e-3, 1e-3, 1e6);
    const auto ds = marginals(c);
    const auto ps = eeopa_policies(ds, q, 0.1);
    const SystemConfig one(c, 1, 1, 1e6, 1e-3), many(c, 64, 14, 1e6, 1e-3);
    const auto e1 = energy_efficiency(total_effective_capacity(ps, ds, q, one), PowerBudget(0.1), one);
    const auto e64 = energy_efficiency(total_effective_capacity(ps, ds, q, many), PowerBudget(0.1), many);
    CHECK(e64.components.total == doctest::Approx(64.0 * e1.components.total).epsilon(1e-14));
    CHECK(e64.eta == doctest::Approx(e1.eta).epsilon(1e-14));
    CHECK(e1.eta_explicit == doctest::Approx(e1.eta).epsilon(1e-12));
    CHECK(e64.total_power == doctest::Approx(0.1 * 2 * 64));
}

TEST_CASE("vanishing exponent gives the Shannon average")
{
    const AntennaConfig c(2, 2);
    const SystemConfig sys(c, 1, 1, 1e6, 1e-3);
    const auto ds = marginals(c);
    const QosParams v = QosParams::vanishing(1e-3, 1e6);
    const QosParams tiny(1e-9, 1e-3, 1e6);
    const PowerPolicy apa = PowerPolicy::apa(PowerBudget(0.5));
    const double shannon = effective_capacity_group(apa, ds[0], v, sys);
    const double direct = 1e3 * integrate([&](double x) { return std::log2(1.0 + 0.5 * x) * ds[0](x); }, 0.0, 40.0).value;
    CHECK(shannon == doctest::Approx(direct).epsilon(1e-9));
    CHECK(effective_capacity_group(apa, ds[0], tiny, sys) == doctest::Approx(shannon).epsilon(1e-5));
    CHECK(effective_capacity_group(apa, ds[0], QosParams(1e-3, 1e-3, 1e6), sys) < shannon);
}

TEST_CASE("capacity Monte Carlo: parallel equals serial and tracks the analytic value")
{
    const AntennaConfig c(2, 2);
    const SystemConfig sys(c, 1, 1, 1e6, 1e-3);
    const QosParams q(1e-3, 1e-3, 1e6);
    const auto ds = marginals(c);
    const auto ps = eeopa_policies(ds, q, 0.1);
    const RandomStream rng(17, 2);
    const auto par = simulate_effective_capacity(ps, q, sys, 100'000, rng);
    const auto ser = simulate_effective_capacity_serial(ps, q, sys, 100'000, rng);
    CHECK(par.per_group == ser.per_group);
    CHECK(par.total == ser.total);
    CHECK(par.frames == 100'000);
    const double analytic = total_effective_capacity(ps, ds, q, sys).total;
    CHECK(par.total == doctest::Approx(analytic).epsilon(0.02));
    CHECK(par.total_mean_rate >= par.total);
    const std::vector<PowerPolicy> short_list{ps[0]};
    CHECK_THROWS_AS(simulate_effective_capacity(short_list, q, sys, 10, rng), Error);
}
