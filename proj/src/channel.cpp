// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#include "eeopa/channel.hpp"
#include "eeopa/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eeopa {

AntennaConfig::AntennaConfig(int m_t, int m_r) : m_t_(m_t), m_r_(m_r)
{
    require(m_t >= 1 && m_r >= 1, "antenna counts must be >= 1");
}

std::string AntennaConfig::label() const
{
    return std::to_string(m_t_) + "x" + std::to_string(m_r_);
}

namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream_id)
{
    return std::seed_seq{
        static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
        0x9e3779b9u};
}

} // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id)
{
    auto seq = make_seed_seq(seed, stream_id);
    engine_.seed(seq);
}

double RandomStream::normal()
{
    ++draws_;
    return normal_(engine_);
}

ChannelMatrix::ChannelMatrix(Eigen::MatrixXcd entries, SeedTag tag)
    : entries_(std::move(entries)), tag_(tag)
{
    require(entries_.rows() >= 1 && entries_.cols() >= 1, "channel matrix must be non-empty");
}

OrderedGains::OrderedGains(std::vector<double> gains) : gains_(std::move(gains))
{
    require(!gains_.empty(), "ordered gains must be non-empty");
    for (std::size_t i = 0; i < gains_.size(); ++i) {
        require(std::isfinite(gains_[i]) && gains_[i] >= 0.0, "gains must be finite and nonnegative");
        if (i > 0)
            require(gains_[i - 1] >= gains_[i], "gains must be sorted in decreasing order");
    }
}

ChannelMatrix sample_channel_matrix(const AntennaConfig &config, RandomStream &rng)
{
    const SeedTag tag{rng.seed(), rng.stream_id(), rng.draws()};
    const double scale = std::sqrt(0.5);
    Eigen::MatrixXcd h(config.m_r(), config.m_t());
    for (int c = 0; c < h.cols(); ++c) {
        for (int r = 0; r < h.rows(); ++r) {
            const double re = rng.normal();
            const double im = rng.normal();
            h(r, c) = {scale * re, scale * im};
        }
    }
    return ChannelMatrix(std::move(h), tag);
}

OrderedGains ordered_gains(const ChannelMatrix &h)
{
    const auto &a = h.entries();
    if (!a.allFinite())
        fail(ErrorKind::invalid_input, "channel matrix has non-finite entries");

    // Gram matrix of size min(m_r, m_t).
    const Eigen::MatrixXcd gram = a.rows() < a.cols() ? Eigen::MatrixXcd(a * a.adjoint())
                                                      : Eigen::MatrixXcd(a.adjoint() * a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        fail(ErrorKind::invalid_input, "eigendecomposition of the Gram matrix failed");

    const auto &ev = solver.eigenvalues(); // ascending
    const auto m = static_cast<std::size_t>(ev.size());
    std::vector<double> gains(m);
    for (std::size_t i = 0; i < m; ++i)
        gains[i] = ev[static_cast<Eigen::Index>(m - 1 - i)];

    const double floor = -1e-10 * std::max(gains.front(), 0.0);
    for (double &g : gains) {
        if (g < 0.0) {
            if (g < floor)
                fail(ErrorKind::invalid_input, "Gram matrix has a significantly negative eigenvalue");
            g = 0.0;
        }
    }
    // Solver output is ascending already; a stable sort keeps original order on ties.
    std::stable_sort(gains.begin(), gains.end(), std::greater<>());
    return OrderedGains(std::move(gains));
}

double log_wishart_normalizer(const AntennaConfig &config)
{
    const int m = config.m();
    const int q = config.q();
    double log_k = 0.0;
    for (int i = 1; i <= m; ++i)
        log_k += std::lgamma(q - i + 1.0) + std::lgamma(m - i + 1.0);
    return log_k;
}

double wishart_normalizer(const AntennaConfig &config)
{
    return std::round(std::exp(log_wishart_normalizer(config)));
}

double wishart_joint_pdf_unchecked(int m, int q, double log_norm, std::span<const double> lambdas)
{
    double sum = 0.0;
    double prod = 1.0;
    for (int i = 0; i < m; ++i) {
        sum += lambdas[i];
        for (int j = i + 1; j < m; ++j) {
            const double d = lambdas[i] - lambdas[j];
            prod *= d * d;
        }
    }
    const int power = q - m;
    if (power > 0) {
        for (int i = 0; i < m; ++i) {
            double p = 1.0;
            for (int k = 0; k < power; ++k)
                p *= lambdas[i];
            prod *= p;
        }
    }
    return prod * std::exp(-sum - log_norm);
}

double wishart_joint_pdf(const AntennaConfig &config, std::span<const double> lambdas)
{
    const auto m = static_cast<std::size_t>(config.m());
    require(lambdas.size() == m, "eigenvalue vector length must equal min(m_t, m_r)");
    for (std::size_t i = 0; i < m; ++i) {
        require(std::isfinite(lambdas[i]) && lambdas[i] >= 0.0, "eigenvalues must be nonnegative");
        if (i > 0)
            require(lambdas[i - 1] >= lambdas[i], "eigenvalues must be sorted in decreasing order");
    }
    return wishart_joint_pdf_unchecked(config.m(), config.q(), log_wishart_normalizer(config), lambdas);
}

double wishart_joint_pdf(const AntennaConfig &config, const OrderedGains &lambdas)
{
    return wishart_joint_pdf(config, lambdas.values());
}

} // namespace eeopa
