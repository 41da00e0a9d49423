// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#include "eeopa/marginals.hpp"
#include "eeopa/csv.hpp"
#include "eeopa/error.hpp"
#include "eeopa/parallel.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>
#include <sstream>

namespace eeopa {

const char *to_string(DensitySource source)
{
    switch (source) {
    case DensitySource::closed_form: return "closed-form";
    case DensitySource::quadrature: return "quadrature";
    case DensitySource::monte_carlo: return "monte-carlo";
    }
    return "unknown";
}

MarginalDensity::MarginalDensity(AntennaConfig config, int group, DensitySource source, Pdf pdf, Mass mass)
    : config_(config), group_(group), source_(source), pdf_(std::move(pdf)), mass_(std::move(mass))
{
    require(group >= 1 && group <= config.m(), "group index must lie in [1, min(m_t, m_r)]");
    require(static_cast<bool>(pdf_), "marginal density needs an evaluator");
}

double MarginalDensity::operator()(double lambda) const
{
    if (lambda < 0.0)
        return 0.0;
    return std::max(0.0, pdf_(lambda));
}

double MarginalDensity::mass(double a, double b, const Tolerance &tol) const
{
    a = std::max(a, 0.0);
    if (b <= a)
        return 0.0;
    if (mass_)
        return mass_(a, b);
    return integrate_checked([this](double x) { return (*this)(x); }, a, b, tol, "density mass").value;
}

EmpiricalDensity::EmpiricalDensity(std::vector<double> bin_edges, const std::vector<std::uint64_t> &counts,
                                   double sample_mean)
    : edges_(std::move(bin_edges)), mean_(sample_mean)
{
    require(edges_.size() >= 2 && counts.size() + 1 == edges_.size(), "histogram needs bins + 1 edges");
    for (std::size_t i = 1; i < edges_.size(); ++i)
        require(edges_[i] > edges_[i - 1], "histogram edges must be strictly ascending");
    for (auto c : counts)
        samples_ += c;
    require(samples_ > 0, "histogram is empty");
    masses_.resize(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        masses_[i] = static_cast<double>(counts[i]) / static_cast<double>(samples_);
}

// ---------------------------------------------------------------------------
// Closed forms

namespace {

int closed_form_key(const AntennaConfig &config)
{
    const int m = config.m();
    const int q = config.q();
    if (m == 2 && q == 2)
        return 22;
    if (m == 2 && q == 3)
        return 23;
    if (m == 4 && q == 4)
        return 44;
    return 0;
}

// Shared polynomials of the 4x4 marginals.
constexpr std::array<double, 7> kPoly3 = {144, -144, 72, 56, 46, 10, 1};
constexpr std::array<double, 9> kPoly2 = {864, -1728, 1728, -192, 96, -96, 32, -4, 1};
constexpr std::array<double, 7> kPoly1 = {144, -432, 648, -408, 126, -18, 1};

ExpPoly marginal_4x4(int n, double first_group_exp1_sign)
{
    ExpPoly p;
    switch (n) {
    case 1:
        p.add(-4.0, 4.0, {1.0});
        p.add(first_group_exp1_sign / 36.0, 1.0, kPoly1);
        p.add(1.0 / 12.0, 3.0, kPoly3);
        p.add(-1.0 / 72.0, 2.0, kPoly2);
        break;
    case 2:
        p.add(12.0, 4.0, {1.0});
        p.add(-1.0 / 6.0, 3.0, kPoly3);
        p.add(1.0 / 72.0, 2.0, kPoly2);
        break;
    case 3:
        p.add(-12.0, 4.0, {1.0});
        p.add(1.0 / 12.0, 3.0, kPoly3);
        break;
    case 4:
        p.add(4.0, 4.0, {1.0});
        break;
    default:
        fail(ErrorKind::unsupported_config, "4x4 group index must be in 1..4");
    }
    return p;
}

} // namespace

bool has_closed_form(const AntennaConfig &config)
{
    return closed_form_key(config) != 0;
}

ExpPoly closed_form_expression(const AntennaConfig &config, int n)
{
    if (n < 1 || n > config.m())
        fail(ErrorKind::unsupported_config, "group index out of range for " + config.label());
    ExpPoly p;
    switch (closed_form_key(config)) {
    case 22:
        if (n == 1) {
            p.add(1.0, 1.0, {2, -2, 1});
            p.add(-2.0, 2.0, {1});
        } else {
            p.add(2.0, 2.0, {1});
        }
        return p;
    case 23:
        if (n == 1) {
            p.add(1.0, 1.0, {0, 3, -2, 0.5});
            p.add(-1.0, 2.0, {0, 3, 1});
        } else {
            p.add(1.0, 2.0, {0, 3, 1});
        }
        return p;
    case 44:
        return marginal_4x4(n, +1.0);
    default:
        fail(ErrorKind::unsupported_config, "no closed-form marginal for " + config.label());
    }
}

ExpPoly published_marginal_4x4(int n)
{
    return marginal_4x4(n, -1.0);
}

MarginalDensity verified_closed_form(const AntennaConfig &config, int n, ExpPoly expression)
{
    auto expr = std::make_shared<const ExpPoly>(std::move(expression));
    auto pdf = [expr](double x) { return (*expr)(x); };
    const double upper = config.tail_bound();
    Tolerance tol;
    tol.absolute = 1e-10;
    const double total = integrate_checked(pdf, 0.0, upper, tol, "closed-form normalization").value;
    if (std::fabs(total - 1.0) > 1e-6) {
        std::ostringstream msg;
        msg << "closed-form marginal for " << config.label() << " group " << n << " integrates to " << total;
        throw ClosedFormMismatch(msg.str(), total);
    }
    auto mass = [expr](double a, double b) { return expr->integral(a, b); };
    return MarginalDensity(config, n, DensitySource::closed_form, pdf, mass);
}

MarginalDensity closed_form_marginal(const AntennaConfig &config, int n)
{
    return verified_closed_form(config, n, closed_form_expression(config, n));
}

// ---------------------------------------------------------------------------
// Quadrature

namespace {

struct NestedMarginal {
    int m;
    int q;
    int fixed; // 0-based index of the conditioned coordinate
    double log_norm;
    double upper;
    Tolerance tol;
    std::vector<int> order; // integration order of the free coordinates

    double integrate_level(std::size_t level, std::array<double, 4> &x) const
    {
        if (level == order.size())
            return wishart_joint_pdf_unchecked(m, q, log_norm, std::span<const double>(x.data(), m));
        const int idx = order[level];
        double a;
        double b;
        if (idx < fixed) {
            a = x[idx + 1]; // lambda_idx >= lambda_{idx+1}
            b = upper;
        } else {
            a = 0.0;
            b = x[idx - 1];
        }
        if (b <= a)
            return 0.0;
        auto inner = [&](double v) {
            x[idx] = v;
            return integrate_level(level + 1, x);
        };
        return integrate(inner, a, b, tol).value;
    }
};

NestedMarginal make_nested(const AntennaConfig &config, int n, const Tolerance &tol)
{
    if (config.m() > 4)
        fail(ErrorKind::unsupported_config, "nested quadrature supports min(m_t, m_r) <= 4");
    require(n >= 1 && n <= config.m(), "group index must lie in [1, min(m_t, m_r)]");
    NestedMarginal nm{config.m(), config.q(), n - 1, log_wishart_normalizer(config), config.tail_bound(), tol, {}};
    for (int i = nm.fixed - 1; i >= 0; --i)
        nm.order.push_back(i);
    for (int i = nm.fixed + 1; i < nm.m; ++i)
        nm.order.push_back(i);
    return nm;
}

} // namespace

double quadrature_marginal_value(const AntennaConfig &config, int n, double lambda, const Tolerance &tol)
{
    const NestedMarginal nm = make_nested(config, n, tol);
    if (lambda < 0.0)
        return 0.0;
    std::array<double, 4> x{};
    x[nm.fixed] = lambda;
    return nm.integrate_level(0, x);
}

MarginalDensity quadrature_marginal(const AntennaConfig &config, int n, const Tolerance &tol)
{
    auto nm = std::make_shared<const NestedMarginal>(make_nested(config, n, tol));
    auto pdf = [nm](double lambda) {
        std::array<double, 4> x{};
        x[nm->fixed] = lambda;
        return nm->integrate_level(0, x);
    };
    return MarginalDensity(config, n, DensitySource::quadrature, pdf);
}

MarginalDensity tabulated_quadrature_marginal(const AntennaConfig &config, int n, int nodes, const Tolerance &tol)
{
    require(nodes >= 16, "tabulation needs at least 16 nodes");
    const NestedMarginal nm = make_nested(config, n, tol);
    const double upper = config.tail_bound();
    const double step = upper / (nodes - 1);
    std::vector<double> values(static_cast<std::size_t>(nodes));
    parallel_for(nodes, [&](std::int64_t i) {
        std::array<double, 4> x{};
        x[nm.fixed] = step * static_cast<double>(i);
        values[static_cast<std::size_t>(i)] = nm.integrate_level(0, x);
    });
    using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;
    auto spline = std::make_shared<const Spline>(values.begin(), values.end(), 0.0, step);
    auto pdf = [spline, upper](double lambda) { return lambda > upper ? 0.0 : (*spline)(lambda); };
    return MarginalDensity(config, n, DensitySource::quadrature, pdf);
}

// ---------------------------------------------------------------------------
// Monte Carlo

namespace {

constexpr std::uint64_t kShardSize = 1u << 14;

struct ShardTally {
    std::vector<std::uint64_t> counts; // group-major, bins per group
    std::vector<double> sums;
};

ShardTally run_shard(const AntennaConfig &config, std::uint64_t seed, std::uint64_t stream, std::uint64_t draws,
                     int bins, double upper)
{
    const int m = config.m();
    ShardTally t{std::vector<std::uint64_t>(static_cast<std::size_t>(m * bins), 0),
                 std::vector<double>(static_cast<std::size_t>(m), 0.0)};
    RandomStream rng(seed, stream);
    const double width = upper / bins;
    for (std::uint64_t s = 0; s < draws; ++s) {
        const OrderedGains g = ordered_gains(sample_channel_matrix(config, rng));
        for (int n = 0; n < m; ++n) {
            const double v = g[static_cast<std::size_t>(n)];
            t.sums[static_cast<std::size_t>(n)] += v;
            const int bin = std::min(bins - 1, static_cast<int>(v / width));
            ++t.counts[static_cast<std::size_t>(n * bins + bin)];
        }
    }
    return t;
}

std::vector<EmpiricalDensity> merge_shards(const AntennaConfig &config, const std::vector<ShardTally> &shards,
                                           std::uint64_t samples, int bins, double upper)
{
    const int m = config.m();
    std::vector<double> edges(static_cast<std::size_t>(bins + 1));
    for (int i = 0; i <= bins; ++i)
        edges[static_cast<std::size_t>(i)] = upper * i / bins;
    std::vector<EmpiricalDensity> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int n = 0; n < m; ++n) {
        std::vector<std::uint64_t> counts(static_cast<std::size_t>(bins), 0);
        double sum = 0.0;
        for (const auto &s : shards) {
            for (int b = 0; b < bins; ++b)
                counts[static_cast<std::size_t>(b)] += s.counts[static_cast<std::size_t>(n * bins + b)];
            sum += s.sums[static_cast<std::size_t>(n)];
        }
        out.emplace_back(edges, counts, sum / static_cast<double>(samples));
    }
    return out;
}

struct ShardPlan {
    std::uint64_t shards;
    std::uint64_t samples;

    std::uint64_t draws(std::uint64_t k) const
    {
        return k + 1 < shards ? kShardSize : samples - kShardSize * (shards - 1);
    }
    static std::uint64_t stream(const RandomStream &rng, std::uint64_t k) { return (rng.stream_id() << 20) + k; }
};

ShardPlan plan_shards(std::uint64_t samples)
{
    require(samples >= 1, "sample count must be positive");
    return {(samples + kShardSize - 1) / kShardSize, samples};
}

} // namespace

std::vector<EmpiricalDensity> mc_ordered_gain_histograms(const AntennaConfig &config, std::uint64_t samples,
                                                         const RandomStream &rng, int bins)
{
    require(bins >= 1, "histogram needs at least one bin");
    const ShardPlan plan = plan_shards(samples);
    const double upper = config.tail_bound();
    std::vector<ShardTally> shards(plan.shards);
    parallel_for(static_cast<std::int64_t>(plan.shards), [&](std::int64_t k) {
        const auto kk = static_cast<std::uint64_t>(k);
        shards[kk] = run_shard(config, rng.seed(), ShardPlan::stream(rng, kk), plan.draws(kk), bins, upper);
    });
    return merge_shards(config, shards, samples, bins, upper);
}

std::vector<EmpiricalDensity> mc_ordered_gain_histograms_serial(const AntennaConfig &config, std::uint64_t samples,
                                                                const RandomStream &rng, int bins)
{
    require(bins >= 1, "histogram needs at least one bin");
    const ShardPlan plan = plan_shards(samples);
    const double upper = config.tail_bound();
    std::vector<ShardTally> shards;
    shards.reserve(plan.shards);
    for (std::uint64_t k = 0; k < plan.shards; ++k)
        shards.push_back(run_shard(config, rng.seed(), ShardPlan::stream(rng, k), plan.draws(k), bins, upper));
    return merge_shards(config, shards, samples, bins, upper);
}

EmpiricalDensity mc_marginal(const AntennaConfig &config, int n, std::uint64_t samples, const RandomStream &rng)
{
    require(n >= 1 && n <= config.m(), "group index must lie in [1, min(m_t, m_r)]");
    require(samples >= 10'000, "Monte Carlo marginal needs at least 1e4 samples");
    auto all = mc_ordered_gain_histograms(config, samples, rng);
    return std::move(all[static_cast<std::size_t>(n - 1)]);
}

MarginalDensity empirical_marginal(const AntennaConfig &config, int n, const EmpiricalDensity &hist)
{
    auto h = std::make_shared<const EmpiricalDensity>(hist);
    auto pdf = [h](double x) {
        const auto &e = h->bin_edges();
        if (x < e.front() || x >= e.back())
            return 0.0;
        const auto it = std::upper_bound(e.begin(), e.end(), x);
        const auto i = static_cast<std::size_t>(it - e.begin() - 1);
        return h->masses()[i] / (e[i + 1] - e[i]);
    };
    auto mass = [h](double a, double b) {
        const auto &e = h->bin_edges();
        double total = 0.0;
        for (std::size_t i = 0; i < h->bins(); ++i) {
            const double lo = std::max(a, e[i]);
            const double hi = std::min(b, e[i + 1]);
            if (hi > lo)
                total += h->masses()[i] * (hi - lo) / (e[i + 1] - e[i]);
        }
        return total;
    };
    return MarginalDensity(config, n, DensitySource::monte_carlo, pdf, mass);
}

double l1_distance(const EmpiricalDensity &a, const MarginalDensity &b)
{
    const auto &e = a.bin_edges();
    double total = 0.0;
    for (std::size_t i = 0; i < a.bins(); ++i)
        total += std::fabs(a.masses()[i] - b.mass(e[i], e[i + 1]));
    // Density mass outside the histogram support counts fully.
    total += b.mass(0.0, e.front()) + b.mass(e.back(), b.tail_bound());
    return total;
}

double l1_distance(const EmpiricalDensity &a, const EmpiricalDensity &b)
{
    require(a.bin_edges() == b.bin_edges(), "histograms must share bin edges");
    double total = 0.0;
    for (std::size_t i = 0; i < a.bins(); ++i)
        total += std::fabs(a.masses()[i] - b.masses()[i]);
    return total;
}

MarginalDensity resolve_marginal(const AntennaConfig &config, int n, const RandomStream &rng,
                                 std::uint64_t mc_samples)
{
    if (has_closed_form(config))
        return closed_form_marginal(config, n);
    if (config.m() == 1)
        return quadrature_marginal(config, n);
    if (config.m() <= 4)
        return tabulated_quadrature_marginal(config, n);
    return empirical_marginal(config, n, mc_marginal(config, n, mc_samples, rng));
}

// ---------------------------------------------------------------------------
// Audit

bool FormulaAudit::all_agree() const
{
    return std::all_of(entries.begin(), entries.end(),
                       [](const FormulaAuditEntry &e) { return e.normalized && e.pointwise_ok; });
}

std::string FormulaAudit::report() const
{
    std::ostringstream out;
    out.precision(10);
    for (const auto &e : entries) {
        out << "group " << e.group << ": integral " << e.integral << ", max |published - quadrature| "
            << e.max_abs_diff << " -> " << (e.normalized && e.pointwise_ok ? "agrees" : "DISCREPANCY") << '\n';
        for (std::size_t i = 0; i < e.lambdas.size(); ++i)
            out << "  lambda=" << e.lambdas[i] << " published=" << e.published[i]
                << " quadrature=" << e.quadrature[i] << '\n';
    }
    return out.str();
}

FormulaAudit audit_published_4x4(const Tolerance &tol)
{
    const AntennaConfig config(4, 4);
    FormulaAudit audit;
    audit.entries.resize(4);
    parallel_for(4, [&](std::int64_t k) {
        const int n = static_cast<int>(k) + 1;
        FormulaAuditEntry &e = audit.entries[static_cast<std::size_t>(k)];
        e.group = n;
        const ExpPoly p = published_marginal_4x4(n);
        e.integral = p.integral_to_infinity();
        e.normalized = std::fabs(e.integral - 1.0) <= 1e-6;
        e.max_abs_diff = 0.0;
        for (std::size_t i = 0; i < e.lambdas.size(); ++i) {
            e.published[i] = p(e.lambdas[i]);
            e.quadrature[i] = quadrature_marginal_value(config, n, e.lambdas[i], tol);
            e.max_abs_diff = std::max(e.max_abs_diff, std::fabs(e.published[i] - e.quadrature[i]));
        }
        e.pointwise_ok = e.max_abs_diff <= audit.pointwise_tolerance;
    });
    return audit;
}

void write_density_csv(std::ostream &out, const MarginalDensity &density, double upper, int points)
{
    require(points >= 2 && upper > 0.0, "density export needs >= 2 points on a positive range");
    out << "lambda,density\n";
    for (int i = 0; i < points; ++i) {
        const double x = upper * i / (points - 1);
        out << format_number(x) << ',' << format_number(density(x)) << '\n';
    }
}

} // namespace eeopa
