// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#include "verify.hpp"

#include "eeopa/config.hpp"
#include "eeopa/csv.hpp"
#include "eeopa/error.hpp"
#include "eeopa/experiments.hpp"
#include "eeopa/parallel.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace eeopa;

namespace {

enum Exit { ok = 0, usage = 1, computation = 2, verification = 3 };

struct Flags {
    std::string config_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<double> theta;
    std::optional<double> p_bar;
    std::optional<int> m_t;
    std::optional<int> m_r;
    std::optional<int> n;
    std::optional<std::uint64_t> samples;
};

void add_common(CLI::App &cmd, Flags &f)
{
    cmd.add_option("--config", f.config_path, "key = value configuration file")->check(CLI::ExistingFile);
    cmd.add_option("--out", f.out, "output directory (default: $EEOPA_OUT_DIR, else .)");
    cmd.add_option("--seed", f.seed, "random seed");
    cmd.add_option("--threads", f.threads, "worker cap (0 = runtime default)")->check(CLI::NonNegativeNumber);
    cmd.add_option("--theta", f.theta, "QoS exponent in 1/bit");
    cmd.add_option("--pbar", f.p_bar, "average power per subchannel");
    cmd.add_option("--mt", f.m_t, "transmit antennas");
    cmd.add_option("--mr", f.m_r, "receive antennas");
    cmd.add_option("--n", f.n, "subcarriers");
    cmd.add_option("--samples", f.samples, "Monte Carlo samples");
}

// flags > file > defaults
RunConfig resolve(const Flags &f)
{
    RunConfig c = f.config_path.empty() ? RunConfig{} : load_config_file(f.config_path);
    auto set = [&c](const char *key, const auto &value) {
        if (value) {
            std::ostringstream text;
            text.precision(17);
            text << *value;
            apply_setting(c, key, text.str());
        }
    };
    set("seed", f.seed);
    set("threads", f.threads);
    set("theta", f.theta);
    set("p_bar", f.p_bar);
    set("m_t", f.m_t);
    set("m_r", f.m_r);
    set("n_subcarriers", f.n);
    set("mc_samples", f.samples);
    if (!f.out.empty())
        c.output_dir = f.out;
    if (c.output_dir.empty()) {
        const char *env = std::getenv("EEOPA_OUT_DIR");
        c.output_dir = env && *env ? env : ".";
    }
    c.validate();
    set_worker_count(c.threads);
    return c;
}

fs::path output_file(const RunConfig &c, const std::string &name)
{
    fs::create_directories(c.output_dir);
    return fs::path(c.output_dir) / name;
}

std::ofstream open_output(const fs::path &path)
{
    std::ofstream out(path);
    if (!out)
        fail(ErrorKind::invalid_input, "cannot write " + path.string());
    return out;
}

int cmd_marginals(const RunConfig &c)
{
    const Scenario s = c.scenario();
    const auto marginals = scenario_marginals(s, RandomStream(c.seed, 0), c.mc_samples);
    for (const auto &d : marginals) {
        const auto path = output_file(c, "marginal_" + s.name() + "_group" + std::to_string(d.group()) + ".csv");
        auto out = open_output(path);
        write_density_csv(out, d, d.tail_bound(), 801);
        std::cout << path.string() << " (" << to_string(d.source()) << ")\n";
    }
    return ok;
}

int cmd_thresholds(const RunConfig &c)
{
    const Scenario s = c.scenario();
    const auto marginals = scenario_marginals(s, RandomStream(c.seed, 0), c.mc_samples);
    std::vector<ThresholdRow> rows;
    auto solve_at = [&](double theta, double p_bar) {
        const QosParams qos(theta, s.frame_duration, s.bandwidth);
        for (const auto &d : marginals) {
            const Threshold t = solve_threshold(qos.beta(), d, PowerBudget(p_bar));
            rows.push_back({s.name(), d.group(), theta, p_bar, t.lambda, t.residual});
        }
    };
    for (double theta : c.theta_grid)
        solve_at(theta, c.p_bar);
    for (double p_bar : c.p_bar_grid)
        solve_at(c.theta, p_bar);
    auto out = open_output(output_file(c, "thresholds_" + s.name() + ".csv"));
    write_threshold_csv(out, rows);
    write_threshold_csv(std::cout, rows);
    return ok;
}

SweepSpec point_spec(const RunConfig &c, std::vector<Algorithm> algorithms)
{
    SweepSpec spec = c.sweep_spec();
    spec.theta_grid = {c.theta};
    spec.p_bar_grid = {c.p_bar};
    spec.algorithms = std::move(algorithms);
    return spec;
}

int report_errors(const SweepResult &r)
{
    for (const auto &e : r.errors)
        std::cerr << "error: " << e << '\n';
    return r.errors.empty() ? ok : computation;
}

int cmd_capacity(const RunConfig &c)
{
    const SweepResult r = sweep(point_spec(c, c.algorithms));
    auto out = open_output(output_file(c, "capacity_" + c.scenario().name() + ".csv"));
    write_sweep_csv(out, r.rows);
    for (const auto &row : r.rows) {
        if (row.group != 1)
            continue;
        std::cout << row.algorithm << ": C_total = " << format_number(row.c_total) << " bit/frame ("
                  << format_number(row.c_total / c.frame_duration) << " bit/s), eta = " << format_number(row.eta)
                  << " bit/frame/W\n";
    }
    return report_errors(r);
}

int cmd_compare(const RunConfig &c)
{
    const SweepResult r = sweep(point_spec(c, {Algorithm::eeopa, Algorithm::apa}));
    auto out = open_output(output_file(c, "compare_" + c.scenario().name() + ".csv"));
    write_sweep_csv(out, r.rows);
    write_sweep_csv(std::cout, r.rows);
    return report_errors(r);
}

int cmd_sweep(const RunConfig &c)
{
    const std::string stem = "sweep_" + c.scenario().name();
    const SweepResult r = sweep(c.sweep_spec());
    {
        auto out = open_output(output_file(c, stem + ".csv"));
        write_sweep_csv(out, r.rows);
    }
    {
        auto out = open_output(output_file(c, stem + ".provenance"));
        write_provenance(out, r);
    }
    {
        auto out = open_output(output_file(c, stem + ".gp"));
        write_gnuplot_script(out, stem + ".csv");
    }
    std::cout << r.rows.size() << " rows written to " << output_file(c, stem + ".csv").string() << '\n';
    return report_errors(r);
}

int cmd_verify(const RunConfig &c)
{
    cli::VerifyOptions options;
    options.seed = c.seed;
    options.mc_samples = c.mc_samples;
    std::cout << "published 4x4 densities against quadrature:\n";
    const auto checks = cli::run_verification(options, std::cout);
    bool all = true;
    for (const auto &check : checks) {
        std::cout << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail << '\n';
        all = all && check.passed;
    }
    return all ? ok : verification;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Energy-efficient power allocation for MIMO-OFDM links under statistical QoS constraints"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);
    Flags flags;
    struct Command {
        const char *name;
        const char *help;
        int (*run)(const RunConfig &);
    };
    const Command commands[] = {
        {"marginals", "write ordered-gain marginal densities as CSV", cmd_marginals},
        {"thresholds", "solve power-allocation thresholds over the theta and p_bar grids", cmd_thresholds},
        {"capacity", "effective capacity and energy efficiency at one operating point", cmd_capacity},
        {"sweep", "evaluate the theta x p_bar grid and write CSV, provenance and a gnuplot script", cmd_sweep},
        {"compare", "EEOPA against APA at one operating point", cmd_compare},
        {"verify", "cross-check closed forms, quadrature and Monte Carlo", cmd_verify},
    };
    int (*selected)(const RunConfig &) = nullptr;
    for (const auto &cmd : commands) {
        CLI::App *sub = app.add_subcommand(cmd.name, cmd.help);
        add_common(*sub, flags);
        sub->callback([&selected, &cmd] { selected = cmd.run; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        const RunConfig config = resolve(flags);
        return selected(config);
    } catch (const Error &e) {
        std::cerr << "eeopa: " << to_string(e.kind()) << ": " << e.what() << '\n';
        if (e.kind() == ErrorKind::parse || e.kind() == ErrorKind::invalid_input)
            return usage;
        return computation;
    } catch (const std::exception &e) {
        std::cerr << "eeopa: " << e.what() << '\n';
        return computation;
    }
}
