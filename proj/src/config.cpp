// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#include "eeopa/config.hpp"
#include "eeopa/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace eeopa {

Scenario RunConfig::scenario() const
{
    Scenario s;
    s.antenna = AntennaConfig(m_t, m_r);
    s.n_subcarriers = n_subcarriers;
    s.bandwidth = bandwidth;
    s.frame_duration = frame_duration;
    return s;
}

SweepSpec RunConfig::sweep_spec() const
{
    SweepSpec spec;
    spec.scenario = scenario();
    spec.theta_grid = theta_grid;
    spec.p_bar_grid = p_bar_grid;
    spec.algorithms = algorithms;
    spec.seed = seed;
    spec.mc_samples = mc_samples;
    spec.tolerance.absolute = quad_tolerance;
    return spec;
}

void RunConfig::validate() const
{
    require(m_t >= 1 && m_r >= 1, "antenna counts must be at least 1");
    require(n_subcarriers >= 1 && n_symbols >= 1, "subcarrier and symbol counts must be at least 1");
    require(bandwidth > 0.0 && frame_duration > 0.0, "bandwidth and frame duration must be positive");
    require(theta > 0.0 && p_bar > 0.0, "theta and p_bar must be positive");
    require(threads >= 0, "threads must be nonnegative");
    require(mc_samples >= 10'000, "mc_samples must be at least 10000");
    require(quad_tolerance > 0.0, "quad_tolerance must be positive");
    sweep_spec().validate();
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(std::string_view v)
{
    const std::string s(v);
    char *end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(x))
        throw std::invalid_argument("expected a number, got '" + s + "'");
    return x;
}

template <typename Int>
Int to_integer(std::string_view v)
{
    Int x{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size())
        throw std::invalid_argument("expected an integer, got '" + std::string(v) + "'");
    return x;
}

std::vector<std::string_view> split_list(std::string_view v)
{
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = v.find(',');
        out.push_back(trim(v.substr(0, comma)));
        if (comma == std::string_view::npos)
            break;
        v.remove_prefix(comma + 1);
    }
    return out;
}

double positive(double x, std::string_view key)
{
    if (!(x > 0.0))
        throw std::out_of_range(std::string(key) + " must be positive");
    return x;
}

int at_least(int x, int lo, std::string_view key)
{
    if (x < lo)
        throw std::out_of_range(std::string(key) + " must be at least " + std::to_string(lo));
    return x;
}

std::vector<double> ascending_grid(std::string_view v, std::string_view key)
{
    std::vector<double> grid;
    for (auto item : split_list(v))
        grid.push_back(positive(to_double(item), key));
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i - 1] < grid[i]))
            throw std::out_of_range(std::string(key) + " must be strictly ascending");
    return grid;
}

} // namespace

void apply_setting(RunConfig &c, std::string_view key, std::string_view value)
{
    try {
        if (key == "m_t")
            c.m_t = at_least(to_integer<int>(value), 1, key);
        else if (key == "m_r")
            c.m_r = at_least(to_integer<int>(value), 1, key);
        else if (key == "n_subcarriers")
            c.n_subcarriers = at_least(to_integer<int>(value), 1, key);
        else if (key == "n_symbols")
            c.n_symbols = at_least(to_integer<int>(value), 1, key);
        else if (key == "bandwidth")
            c.bandwidth = positive(to_double(value), key);
        else if (key == "frame_duration")
            c.frame_duration = positive(to_double(value), key);
        else if (key == "theta")
            c.theta = positive(to_double(value), key);
        else if (key == "p_bar")
            c.p_bar = positive(to_double(value), key);
        else if (key == "theta_grid")
            c.theta_grid = ascending_grid(value, key);
        else if (key == "p_bar_grid")
            c.p_bar_grid = ascending_grid(value, key);
        else if (key == "algorithms") {
            std::vector<Algorithm> algs;
            for (auto item : split_list(value))
                algs.push_back(parse_algorithm(item));
            c.algorithms = algs;
        } else if (key == "seed")
            c.seed = to_integer<std::uint64_t>(value);
        else if (key == "output_dir") {
            if (value.empty())
                throw std::out_of_range("output_dir must not be empty");
            c.output_dir = std::string(value);
        } else if (key == "threads")
            c.threads = at_least(to_integer<int>(value), 0, key);
        else if (key == "mc_samples") {
            c.mc_samples = to_integer<std::uint64_t>(value);
            if (c.mc_samples < 10'000)
                throw std::out_of_range("mc_samples must be at least 10000");
        } else if (key == "quad_tolerance")
            c.quad_tolerance = positive(to_double(value), key);
        else
            throw std::domain_error("unknown key '" + std::string(key) + "'");
    } catch (const Error &e) {
        fail(ErrorKind::parse, std::string(key) + ": " + e.what());
    } catch (const std::domain_error &e) {
        fail(ErrorKind::parse, e.what());
    } catch (const std::exception &e) {
        fail(ErrorKind::parse, std::string(key) + ": " + e.what());
    }
}

RunConfig parse_config(std::string_view text)
{
    RunConfig c;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (eq == std::string_view::npos)
            fail(ErrorKind::parse, where + "expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        try {
            apply_setting(c, key, value);
        } catch (const Error &e) {
            fail(ErrorKind::parse, where + e.what());
        }
    }
    return c;
}

RunConfig load_config_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::parse, "cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_config(text.str());
    } catch (const Error &e) {
        fail(ErrorKind::parse, path + ": " + e.what());
    }
}

} // namespace eeopa
