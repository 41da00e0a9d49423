// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#include "eeopa/experiments.hpp"
#include "eeopa/csv.hpp"
#include "eeopa/error.hpp"
#include "eeopa/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <tuple>

namespace eeopa {

SystemConfig Scenario::system() const
{
    return SystemConfig(antenna, n_subcarriers, 1, bandwidth, frame_duration);
}

const char *to_string(Algorithm algorithm)
{
    return algorithm == Algorithm::eeopa ? "EEOPA" : "APA";
}

Algorithm parse_algorithm(std::string_view text)
{
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    if (s == "EEOPA")
        return Algorithm::eeopa;
    if (s == "APA")
        return Algorithm::apa;
    fail(ErrorKind::parse, "unknown algorithm '" + std::string(text) + "'");
}

std::vector<MarginalDensity> scenario_marginals(const Scenario &scenario, const RandomStream &rng,
                                                std::uint64_t mc_samples)
{
    std::vector<MarginalDensity> out;
    for (int n = 1; n <= scenario.antenna.m(); ++n)
        out.push_back(resolve_marginal(scenario.antenna, n, rng, mc_samples));
    return out;
}

namespace {

void check_marginals(const Scenario &scenario, std::span<const MarginalDensity> marginals)
{
    require(marginals.size() == static_cast<std::size_t>(scenario.antenna.m()),
            "need one marginal density per subchannel group");
    for (std::size_t i = 0; i < marginals.size(); ++i)
        require(marginals[i].config() == scenario.antenna && marginals[i].group() == static_cast<int>(i) + 1,
                "marginal densities must match the scenario and be in group order");
}

RandomStream default_stream()
{
    return RandomStream(1, 0);
}

} // namespace

EeopaRun run_eeopa(const Scenario &scenario, const QosParams &qos, const PowerBudget &budget,
                   std::span<const MarginalDensity> marginals, const Tolerance &tol)
{
    check_marginals(scenario, marginals);
    const SystemConfig sys = scenario.system();
    EeopaRun run;
    for (const auto &density : marginals) {
        const Threshold t = solve_threshold(qos.beta(), density, budget);
        run.thresholds.push_back(t);
        run.policies.push_back(PowerPolicy::eeopa(t, qos.beta()));
        run.power_audit.push_back(average_power_audit(run.policies.back(), density, tol));
    }
    run.capacity = total_effective_capacity(run.policies, marginals, qos, sys, tol);
    run.efficiency = energy_efficiency(run.capacity, budget, sys);
    return run;
}

EeopaRun run_eeopa(const Scenario &scenario, const QosParams &qos, const PowerBudget &budget)
{
    const auto marginals = scenario_marginals(scenario, default_stream());
    return run_eeopa(scenario, qos, budget, marginals);
}

ApaRun run_apa(const Scenario &scenario, const QosParams &qos, const PowerBudget &budget,
               std::span<const MarginalDensity> marginals, const Tolerance &tol)
{
    check_marginals(scenario, marginals);
    const SystemConfig sys = scenario.system();
    ApaRun run;
    for (const auto &density : marginals) {
        run.policies.push_back(PowerPolicy::apa(budget));
        run.power_audit.push_back(average_power_audit(run.policies.back(), density, tol));
    }
    run.capacity = total_effective_capacity(run.policies, marginals, qos, sys, tol);
    run.efficiency = energy_efficiency(run.capacity, budget, sys);
    return run;
}

ApaRun run_apa(const Scenario &scenario, const QosParams &qos, const PowerBudget &budget)
{
    const auto marginals = scenario_marginals(scenario, default_stream());
    return run_apa(scenario, qos, budget, marginals);
}

namespace {

bool strictly_ascending_positive(const std::vector<double> &grid)
{
    if (grid.empty())
        return false;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(std::isfinite(grid[i]) && grid[i] > 0.0))
            return false;
        if (i > 0 && !(grid[i - 1] < grid[i]))
            return false;
    }
    return true;
}

} // namespace

void SweepSpec::validate() const
{
    require(strictly_ascending_positive(theta_grid), "theta grid must be non-empty, positive and strictly ascending");
    require(strictly_ascending_positive(p_bar_grid), "p_bar grid must be non-empty, positive and strictly ascending");
    require(!algorithms.empty(), "at least one algorithm must be selected");
    require(mc_samples >= 10'000, "Monte Carlo sample count must be at least 1e4");
}

namespace {

struct GridPoint {
    double theta;
    double p_bar;
    Algorithm algorithm;
};

struct PointOutcome {
    std::vector<SweepRow> rows;
    std::string error;
};

SweepRow base_row(const Scenario &s, const GridPoint &p, int group)
{
    SweepRow r;
    r.scenario = s.name();
    r.m_t = s.antenna.m_t();
    r.m_r = s.antenna.m_r();
    r.theta = p.theta;
    r.p_bar = p.p_bar;
    r.group = group;
    r.algorithm = to_string(p.algorithm);
    return r;
}

PointOutcome evaluate_point(const SweepSpec &spec, std::span<const MarginalDensity> marginals, const GridPoint &p)
{
    const Scenario &s = spec.scenario;
    PointOutcome out;
    try {
        const QosParams qos(p.theta, s.frame_duration, s.bandwidth);
        const PowerBudget budget(p.p_bar);
        std::vector<double> lambdas;
        EffectiveCapacityResult cap;
        EnergyEfficiencyResult eff;
        if (p.algorithm == Algorithm::eeopa) {
            EeopaRun run = run_eeopa(s, qos, budget, marginals, spec.tolerance);
            for (const auto &t : run.thresholds)
                lambdas.push_back(t.lambda);
            cap = std::move(run.capacity);
            eff = std::move(run.efficiency);
        } else {
            ApaRun run = run_apa(s, qos, budget, marginals, spec.tolerance);
            lambdas.assign(marginals.size(), std::numeric_limits<double>::quiet_NaN());
            cap = std::move(run.capacity);
            eff = std::move(run.efficiency);
        }
        for (std::size_t n = 0; n < marginals.size(); ++n) {
            SweepRow r = base_row(s, p, static_cast<int>(n) + 1);
            r.lambda_n = lambdas[n];
            r.c_group = cap.per_group[n];
            r.c_total = cap.total;
            r.eta = eff.eta;
            r.status = "ok";
            out.rows.push_back(std::move(r));
        }
    } catch (const Error &e) {
        std::ostringstream msg;
        msg << s.name() << " theta=" << format_number(p.theta) << " p_bar=" << format_number(p.p_bar) << ' '
            << to_string(p.algorithm) << ": " << to_string(e.kind()) << ": " << e.what();
        out.error = msg.str();
        out.rows.clear();
        const double nan = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t n = 0; n < marginals.size(); ++n) {
            SweepRow r = base_row(s, p, static_cast<int>(n) + 1);
            r.lambda_n = r.c_group = r.c_total = r.eta = nan;
            r.status = "error";
            out.rows.push_back(std::move(r));
        }
    }
    return out;
}

} // namespace

SweepResult sweep(const SweepSpec &spec, std::span<const MarginalDensity> marginals)
{
    spec.validate();
    check_marginals(spec.scenario, marginals);

    std::vector<GridPoint> points;
    for (double theta : spec.theta_grid)
        for (double p_bar : spec.p_bar_grid)
            for (Algorithm a : spec.algorithms)
                points.push_back({theta, p_bar, a});

    std::vector<PointOutcome> outcomes(points.size());
    parallel_for(static_cast<std::int64_t>(points.size()), [&](std::int64_t i) {
        const auto k = static_cast<std::size_t>(i);
        outcomes[k] = evaluate_point(spec, marginals, points[k]);
    });

    SweepResult result;
    for (auto &o : outcomes) {
        for (auto &r : o.rows)
            result.rows.push_back(std::move(r));
        if (!o.error.empty())
            result.errors.push_back(std::move(o.error));
    }
    std::stable_sort(result.rows.begin(), result.rows.end(), [](const SweepRow &a, const SweepRow &b) {
        return std::tie(a.theta, a.p_bar, a.algorithm, a.group) < std::tie(b.theta, b.p_bar, b.algorithm, b.group);
    });

    std::ostringstream tol;
    tol << format_number(spec.tolerance.absolute);
    std::string sources;
    for (const auto &m : marginals) {
        if (!sources.empty())
            sources += ' ';
        sources += to_string(m.source());
    }
    result.provenance = {{"scenario", spec.scenario.name()},
                         {"seed", std::to_string(spec.seed)},
                         {"stream_id", std::to_string(spec.stream_id)},
                         {"mc_samples", std::to_string(spec.mc_samples)},
                         {"quad_tolerance", tol.str()},
                         {"n_subcarriers", std::to_string(spec.scenario.n_subcarriers)},
                         {"bandwidth", format_number(spec.scenario.bandwidth)},
                         {"frame_duration", format_number(spec.scenario.frame_duration)},
                         {"density_sources", sources}};
    return result;
}

SweepResult sweep(const SweepSpec &spec)
{
    spec.validate();
    const auto marginals = scenario_marginals(spec.scenario, RandomStream(spec.seed, spec.stream_id), spec.mc_samples);
    return sweep(spec, marginals);
}

void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows)
{
    out << kSweepHeader << '\n';
    for (const auto &r : rows)
        out << sanitize_field(r.scenario) << ',' << r.m_t << ',' << r.m_r << ',' << format_number(r.theta) << ','
            << format_number(r.p_bar) << ',' << r.group << ',' << format_number(r.lambda_n) << ','
            << format_number(r.c_group) << ',' << format_number(r.c_total) << ',' << format_number(r.eta) << ','
            << sanitize_field(r.algorithm) << ',' << sanitize_field(r.status) << '\n';
}

std::vector<SweepRow> read_sweep_csv(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line) || line != kSweepHeader)
        fail(ErrorKind::parse, "sweep CSV must start with the header row");
    std::vector<SweepRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        const auto f = split_csv_line(line);
        if (f.size() != 12)
            fail(ErrorKind::parse, "line " + std::to_string(line_no) + ": expected 12 fields");
        try {
            SweepRow r;
            r.scenario = f[0];
            r.m_t = static_cast<int>(parse_number(f[1]));
            r.m_r = static_cast<int>(parse_number(f[2]));
            r.theta = parse_number(f[3]);
            r.p_bar = parse_number(f[4]);
            r.group = static_cast<int>(parse_number(f[5]));
            r.lambda_n = parse_number(f[6]);
            r.c_group = parse_number(f[7]);
            r.c_total = parse_number(f[8]);
            r.eta = parse_number(f[9]);
            r.algorithm = f[10];
            r.status = f[11];
            rows.push_back(std::move(r));
        } catch (const Error &e) {
            fail(ErrorKind::parse, "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return rows;
}

void write_provenance(std::ostream &out, const SweepResult &result)
{
    for (const auto &[key, value] : result.provenance)
        out << "# " << key << " = " << value << '\n';
    for (const auto &e : result.errors)
        out << "# error = " << e << '\n';
}

std::vector<double> default_theta_grid()
{
    std::vector<double> grid;
    for (int i = 0; i <= 6; ++i)
        grid.push_back(std::pow(10.0, -5.0 + 4.0 * i / 6.0));
    return grid;
}

std::vector<double> default_p_bar_grid()
{
    std::vector<double> grid;
    for (int i = 0; i < 10; ++i)
        grid.push_back(0.05 * (i + 1));
    return grid;
}

bool fully_gain_ordered(std::span<const double> thresholds)
{
    for (std::size_t i = 1; i < thresholds.size(); ++i)
        if (!(thresholds[i - 1] > thresholds[i]))
            return false;
    return true;
}

std::optional<std::pair<double, double>> ordering_transition(std::span<const double> grid,
                                                             const std::vector<bool> &flags)
{
    require(grid.size() == flags.size(), "grid and flags must have equal length");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (flags[i] && !flags[i + 1])
            return std::make_pair(grid[i], grid[i + 1]);
    return std::nullopt;
}

std::vector<double> thresholds_at(const std::vector<SweepRow> &rows, double theta, double p_bar)
{
    std::vector<std::pair<int, double>> found;
    for (const auto &r : rows)
        if (r.algorithm == "EEOPA" && r.theta == theta && r.p_bar == p_bar)
            found.emplace_back(r.group, r.lambda_n);
    std::sort(found.begin(), found.end());
    std::vector<double> out;
    for (const auto &[g, l] : found)
        out.push_back(l);
    return out;
}

void write_gnuplot_script(std::ostream &out, const std::string &csv_name)
{
    const std::string f = '"' + csv_name + '"';
    out << "# columns: " << kSweepHeader << "\n"
        << "set datafile separator ','\n"
        << "set key autotitle columnhead\n"
        << "set terminal pngcairo size 900,600\n"
        << "sel(alg, col) = (strcol(11) eq alg && strcol(12) eq \"ok\" && column(6) == 1) ? column(col) : 1/0\n"
        << "\n"
        << "set output 'capacity_vs_theta.png'\n"
        << "set logscale x\n"
        << "set xlabel 'theta (1/bit)'\n"
        << "set ylabel 'C_total (bit/frame)'\n"
        << "plot " << f << " using 4:(sel(\"EEOPA\", 9)) with linespoints title 'EEOPA', \\\n"
        << "     " << f << " using 4:(sel(\"APA\", 9)) with linespoints title 'APA'\n"
        << "\n"
        << "set output 'eta_vs_theta.png'\n"
        << "set ylabel 'eta (bit/frame/W)'\n"
        << "plot " << f << " using 4:(sel(\"EEOPA\", 10)) with linespoints title 'EEOPA', \\\n"
        << "     " << f << " using 4:(sel(\"APA\", 10)) with linespoints title 'APA'\n"
        << "\n"
        << "unset logscale x\n"
        << "set output 'eta_vs_pbar.png'\n"
        << "set xlabel 'p_bar (W)'\n"
        << "plot " << f << " using 5:(sel(\"EEOPA\", 10)) with linespoints title 'EEOPA', \\\n"
        << "     " << f << " using 5:(sel(\"APA\", 10)) with linespoints title 'APA'\n"
        << "\n"
        << "set output 'threshold_vs_group.png'\n"
        << "set xlabel 'group'\n"
        << "set ylabel 'lambda_n'\n"
        << "plot " << f << " using 6:(strcol(11) eq \"EEOPA\" ? column(7) : 1/0) with points title 'EEOPA thresholds'\n";
}

} // namespace eeopa
