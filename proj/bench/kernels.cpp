// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#include "eeopa/allocation.hpp"
#include "eeopa/capacity.hpp"
#include "eeopa/experiments.hpp"
#include "eeopa/marginals.hpp"
#include "eeopa/parallel.hpp"

#include <benchmark/benchmark.h>

using namespace eeopa;

namespace {

constexpr std::uint64_t kSamples = 1 << 17;

void histograms_serial(benchmark::State &state)
{
    const AntennaConfig config(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(mc_ordered_gain_histograms_serial(config, kSamples, RandomStream(1, 0)));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kSamples));
}

void histograms_parallel(benchmark::State &state)
{
    const AntennaConfig config(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(mc_ordered_gain_histograms(config, kSamples, RandomStream(1, 0)));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kSamples));
}

struct CapacityFixture {
    Scenario scenario;
    QosParams qos{1e-3, 1e-3, 1e6};
    std::vector<PowerPolicy> policies;

    CapacityFixture()
    {
        const auto marginals = scenario_marginals(scenario, RandomStream(1, 0), 1'000'000);
        for (const auto &d : marginals)
            policies.push_back(PowerPolicy::eeopa(solve_threshold(qos.beta(), d, PowerBudget(0.1)), qos.beta()));
    }
};

const CapacityFixture &capacity_fixture()
{
    static const CapacityFixture fixture;
    return fixture;
}

void capacity_serial(benchmark::State &state)
{
    const auto &f = capacity_fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            simulate_effective_capacity_serial(f.policies, f.qos, f.scenario.system(), kSamples, RandomStream(2, 0)));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kSamples));
}

void capacity_parallel(benchmark::State &state)
{
    const auto &f = capacity_fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            simulate_effective_capacity(f.policies, f.qos, f.scenario.system(), kSamples, RandomStream(2, 0)));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kSamples));
}

void theta_sweep(benchmark::State &state)
{
    set_worker_count(static_cast<int>(state.range(0)));
    SweepSpec spec;
    spec.theta_grid = default_theta_grid();
    spec.p_bar_grid = {0.1};
    for (auto _ : state)
        benchmark::DoNotOptimize(sweep(spec));
    set_worker_count(0);
}

} // namespace

BENCHMARK(histograms_serial)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(histograms_parallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(capacity_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(capacity_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(theta_sweep)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
