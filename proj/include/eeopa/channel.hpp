// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace eeopa {

/// Transmit/receive antenna counts. m() is the number of parallel spatial
/// subchannels per subcarrier and q() the larger array size.
class AntennaConfig {
public:
    AntennaConfig(int m_t, int m_r);

    int m_t() const noexcept { return m_t_; }
    int m_r() const noexcept { return m_r_; }
    int m() const noexcept { return m_t_ < m_r_ ? m_t_ : m_r_; }
    int q() const noexcept { return m_t_ < m_r_ ? m_r_ : m_t_; }

    /// "MtxMr", e.g. "3x2".
    std::string label() const;

    /// Integration cutoff: residual mass of every ordered gain beyond this
    /// bound is negligible (< 1e-10).
    double tail_bound() const noexcept { return 10.0 * (m() + q()); }

    friend bool operator==(const AntennaConfig &, const AntennaConfig &) = default;

private:
    int m_t_;
    int m_r_;
};

/// A reproducible stream of standard-normal draws. Two streams with equal
/// (seed, stream_id) produce identical sequences; parallel work shards by
/// stream_id.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    std::uint64_t draws() const noexcept { return draws_; }

    double normal();

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t draws_ = 0;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

struct SeedTag {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
    std::uint64_t offset = 0; ///< normals consumed from the stream before this draw
};

/// m_r x m_t matrix of complex channel coefficients.
class ChannelMatrix {
public:
    ChannelMatrix(Eigen::MatrixXcd entries, SeedTag tag = {});

    const Eigen::MatrixXcd &entries() const noexcept { return entries_; }
    const SeedTag &seed_tag() const noexcept { return tag_; }
    int rows() const noexcept { return static_cast<int>(entries_.rows()); }
    int cols() const noexcept { return static_cast<int>(entries_.cols()); }

private:
    Eigen::MatrixXcd entries_;
    SeedTag tag_;
};

/// Subchannel gains of one subcarrier, sorted in decreasing order.
class OrderedGains {
public:
    /// Validates that `gains` is non-empty, nonnegative and non-increasing.
    explicit OrderedGains(std::vector<double> gains);

    std::span<const double> values() const noexcept { return gains_; }
    std::size_t size() const noexcept { return gains_.size(); }
    double operator[](std::size_t i) const { return gains_[i]; }

private:
    std::vector<double> gains_;
};

/// Draws a channel with i.i.d. CN(0, 1) entries (real and imaginary parts
/// each N(0, 1/2)).
ChannelMatrix sample_channel_matrix(const AntennaConfig &config, RandomStream &rng);

/// Eigenvalues of the min(m_t, m_r)-sized Gram matrix, sorted descending.
/// Values in [-1e-10 * lambda_max, 0) are clamped to zero; anything more
/// negative, or non-finite entries, raise invalid-input.
OrderedGains ordered_gains(const ChannelMatrix &h);

/// K_{M,Q} = prod_{i=1..M} (Q-i)! (M-i)!, accumulated in log domain.
double wishart_normalizer(const AntennaConfig &config);
double log_wishart_normalizer(const AntennaConfig &config);

/// Joint density of the ordered eigenvalues of the central Wishart matrix on
/// the region lambda_1 >= ... >= lambda_M >= 0. Rejects unsorted or
/// negative input.
double wishart_joint_pdf(const AntennaConfig &config, std::span<const double> lambdas);
double wishart_joint_pdf(const AntennaConfig &config, const OrderedGains &lambdas);

/// Unchecked variant for hot integration loops; `lambdas` must already be
/// ordered and nonnegative, and log_norm = log_wishart_normalizer(config).
double wishart_joint_pdf_unchecked(int m, int q, double log_norm, std::span<const double> lambdas);

} // namespace eeopa
