// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#pragma once

#include "eeopa/channel.hpp"
#include "eeopa/exp_poly.hpp"
#include "eeopa/quadrature.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace eeopa {

enum class DensitySource { closed_form, quadrature, monte_carlo };

const char *to_string(DensitySource source);

/// Density of the n-th largest subchannel gain (n = 1 is the strongest) for
/// one antenna configuration. Every subcarrier shares it, so one instance
/// serves a whole subchannel group.
class MarginalDensity {
public:
    using Pdf = std::function<double(double)>;
    using Mass = std::function<double(double, double)>;

    MarginalDensity(AntennaConfig config, int group, DensitySource source, Pdf pdf, Mass mass = {});

    const AntennaConfig &config() const noexcept { return config_; }
    int group() const noexcept { return group_; }
    DensitySource source() const noexcept { return source_; }
    double tail_bound() const noexcept { return config_.tail_bound(); }

    /// Density at lambda; zero for lambda < 0 and clamped at zero from below
    /// (closed forms lose a few ulps to cancellation near the origin).
    double operator()(double lambda) const;

    /// Probability mass on [a, b]; exact when the source provides it.
    double mass(double a, double b, const Tolerance &tol = {}) const;

private:
    AntennaConfig config_;
    int group_;
    DensitySource source_;
    Pdf pdf_;
    Mass mass_;
};

/// Histogram of sampled gains, normalized to unit mass.
class EmpiricalDensity {
public:
    EmpiricalDensity(std::vector<double> bin_edges, const std::vector<std::uint64_t> &counts,
                     double sample_mean);

    const std::vector<double> &bin_edges() const noexcept { return edges_; }
    const std::vector<double> &masses() const noexcept { return masses_; }
    std::uint64_t sample_count() const noexcept { return samples_; }
    double sample_mean() const noexcept { return mean_; }
    std::size_t bins() const noexcept { return masses_.size(); }

private:
    std::vector<double> edges_;
    std::vector<double> masses_;
    std::uint64_t samples_ = 0;
    double mean_ = 0.0;
};

/// True for the configurations with tabulated closed forms: (M, Q) in
/// {(2, 2), (2, 3), (4, 4)}.
bool has_closed_form(const AntennaConfig &config);

/// The closed-form expression for group n, without verification.
ExpPoly closed_form_expression(const AntennaConfig &config, int n);

/// Wraps `expression` as a density after checking its normalization to
/// 1e-6 by adaptive quadrature; throws ClosedFormMismatch otherwise.
MarginalDensity verified_closed_form(const AntennaConfig &config, int n, ExpPoly expression);

/// Verified closed-form marginal; unsupported-config error outside the
/// tabulated set.
MarginalDensity closed_form_marginal(const AntennaConfig &config, int n);

/// The 4x4 group densities exactly as they usually appear in print. Group 1
/// carries a sign error on its e^{-lambda} term (it integrates to -7); it is
/// kept verbatim so the audit can report it.
ExpPoly published_marginal_4x4(int n);

/// Marginal density value at lambda by nested adaptive quadrature of the
/// joint eigenvalue density (M - 1 nested integrals, M <= 4). Coordinates
/// above n run over [lambda, tail_bound], coordinates below over
/// [0, previous coordinate].
double quadrature_marginal_value(const AntennaConfig &config, int n, double lambda,
                                 const Tolerance &tol = {});

/// Density backed by quadrature_marginal_value (each evaluation is a nested
/// integral). Unsupported-config error for M > 4.
MarginalDensity quadrature_marginal(const AntennaConfig &config, int n, const Tolerance &tol = {});

/// Samples the quadrature marginal on a uniform grid (in parallel) and
/// interpolates with a cubic B-spline; the practical form of a quadrature
/// density for repeated evaluation.
MarginalDensity tabulated_quadrature_marginal(const AntennaConfig &config, int n, int nodes = 801,
                                              const Tolerance &tol = {});

inline constexpr int kHistogramBins = 200;

/// Histograms of every ordered gain (index 0 = group 1) from `samples`
/// channel draws. Draws are split into fixed shards of 2^14 samples, shard k
/// using stream (stream_id << 20) + k, so the result does not depend on the
/// worker count. Parallel over shards.
std::vector<EmpiricalDensity> mc_ordered_gain_histograms(const AntennaConfig &config, std::uint64_t samples,
                                                         const RandomStream &rng, int bins = kHistogramBins);

/// Single-threaded reference for mc_ordered_gain_histograms (same shards,
/// same output bit for bit).
std::vector<EmpiricalDensity> mc_ordered_gain_histograms_serial(const AntennaConfig &config,
                                                                std::uint64_t samples, const RandomStream &rng,
                                                                int bins = kHistogramBins);

/// Histogram of the n-th ordered gain; samples must be >= 1e4.
EmpiricalDensity mc_marginal(const AntennaConfig &config, int n, std::uint64_t samples, const RandomStream &rng);

/// Piecewise-constant density built from a histogram.
MarginalDensity empirical_marginal(const AntennaConfig &config, int n, const EmpiricalDensity &hist);

/// sum over bins of |histogram mass - density mass on the bin|.
double l1_distance(const EmpiricalDensity &a, const MarginalDensity &b);
double l1_distance(const EmpiricalDensity &a, const EmpiricalDensity &b);

/// Picks the density the optimizer uses for group n: the verified closed
/// form when available, the tabulated quadrature marginal for M <= 4, and a
/// Monte Carlo histogram otherwise.
MarginalDensity resolve_marginal(const AntennaConfig &config, int n, const RandomStream &rng,
                                 std::uint64_t mc_samples = 1'000'000);

/// Pointwise comparison of a published closed form against quadrature.
struct FormulaAuditEntry {
    int group = 0;
    double integral = 0.0;
    std::array<double, 4> lambdas{0.1, 1.0, 2.0, 5.0};
    std::array<double, 4> published{};
    std::array<double, 4> quadrature{};
    double max_abs_diff = 0.0;
    bool normalized = false;
    bool pointwise_ok = false;
};

struct FormulaAudit {
    std::vector<FormulaAuditEntry> entries;
    double pointwise_tolerance = 1e-3;

    bool all_agree() const;
    std::string report() const;
};

FormulaAudit audit_published_4x4(const Tolerance &tol = {});

/// Two-column CSV (lambda,density) on `points` uniform nodes of [0, upper].
void write_density_csv(std::ostream &out, const MarginalDensity &density, double upper, int points);

} // namespace eeopa
