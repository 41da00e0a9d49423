// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#include "eeopa/channel.hpp"
#include "eeopa/error.hpp"

#include <doctest.h>

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace eeopa;

TEST_CASE("antenna configuration")
{
    const AntennaConfig c(3, 2);
    CHECK(c.m() == 2);
    CHECK(c.q() == 3);
    CHECK(c.label() == "3x2");
    CHECK(c.tail_bound() == doctest::Approx(50.0));
    CHECK_THROWS_AS(AntennaConfig(0, 2), Error);
}

TEST_CASE("random streams are reproducible and distinct")
{
    RandomStream a(7, 3), b(7, 3), c(7, 4);
    std::vector<double> va, vb, vc;
    for (int i = 0; i < 100; ++i) {
        va.push_back(a.normal());
        vb.push_back(b.normal());
        vc.push_back(c.normal());
    }
    CHECK(va == vb);
    CHECK(va != vc);
    CHECK(a.draws() == 100);
}

TEST_CASE("sampled entries have unit average power")
{
    const AntennaConfig c(4, 4);
    RandomStream rng(11, 0);
    double power = 0.0;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i)
        power += sample_channel_matrix(c, rng).entries().squaredNorm();
    CHECK(power / (draws * 16.0) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("channel matrix shape and seed tag")
{
    RandomStream rng(5, 2);
    rng.normal();
    const ChannelMatrix h = sample_channel_matrix(AntennaConfig(3, 2), rng);
    CHECK(h.rows() == 2);
    CHECK(h.cols() == 3);
    CHECK(h.seed_tag().seed == 5);
    CHECK(h.seed_tag().stream_id == 2);
    CHECK(h.seed_tag().offset == 1);
}

TEST_CASE("ordered gains equal squared singular values")
{
    RandomStream rng(3, 1);
    for (const auto &c : {AntennaConfig(2, 2), AntennaConfig(3, 2), AntennaConfig(2, 3), AntennaConfig(4, 4)}) {
        for (int trial = 0; trial < 50; ++trial) {
            const ChannelMatrix h = sample_channel_matrix(c, rng);
            const OrderedGains g = ordered_gains(h);
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h.entries());
            const auto s = svd.singularValues();
            REQUIRE(g.size() == static_cast<std::size_t>(c.m()));
            for (std::size_t i = 0; i < g.size(); ++i)
                CHECK(g[i] == doctest::Approx(s[static_cast<Eigen::Index>(i)] * s[static_cast<Eigen::Index>(i)])
                                  .epsilon(1e-10));
            CHECK(std::is_sorted(g.values().rbegin(), g.values().rend()));
        }
    }
}

TEST_CASE("rank-deficient channel clamps tiny negative eigenvalues")
{
    Eigen::MatrixXcd h(2, 2);
    h << 1.0, 2.0, 2.0, 4.0;
    const OrderedGains g = ordered_gains(ChannelMatrix(h));
    CHECK(g[0] == doctest::Approx(25.0));
    CHECK(g[1] >= 0.0);
    CHECK(g[1] < 1e-12);
}

TEST_CASE("non-finite channel is rejected")
{
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(2, 2);
    h(0, 1) = std::complex<double>(std::nan(""), 0.0);
    CHECK_THROWS_AS(ordered_gains(ChannelMatrix(h)), Error);
}

TEST_CASE("ordered gains validate their input")
{
    CHECK_NOTHROW(OrderedGains({3.0, 1.0, 1.0}));
    CHECK_THROWS_AS(OrderedGains({1.0, 2.0}), Error);
    CHECK_THROWS_AS(OrderedGains({1.0, -0.5}), Error);
    CHECK_THROWS_AS(OrderedGains(std::vector<double>{}), Error);
}

TEST_CASE("Wishart normalizer")
{
    CHECK(wishart_normalizer(AntennaConfig(2, 2)) == 1.0);
    CHECK(wishart_normalizer(AntennaConfig(3, 2)) == 2.0);
    CHECK(wishart_normalizer(AntennaConfig(4, 4)) == 144.0);
    CHECK(wishart_normalizer(AntennaConfig(1, 1)) == 1.0);
}

TEST_CASE("joint density")
{
    const AntennaConfig c(2, 2);
    // e^{-(3+1)} (3-1)^2
    CHECK(wishart_joint_pdf(c, std::vector<double>{3.0, 1.0}) == doctest::Approx(4.0 * std::exp(-4.0)));
    CHECK(wishart_joint_pdf(c, std::vector<double>{2.0, 2.0}) == 0.0);
    CHECK_THROWS_AS(wishart_joint_pdf(c, std::vector<double>{1.0, 3.0}), Error);
    CHECK_THROWS_AS(wishart_joint_pdf(c, std::vector<double>{3.0}), Error);
    CHECK_THROWS_AS(wishart_joint_pdf(c, std::vector<double>{3.0, -1.0}), Error);

    // Brute-force 2-D midpoint sum over the ordered region integrates to 1.
    const AntennaConfig c32(3, 2);
    const int n = 1200;
    const double upper = 40.0;
    const double h = upper / n;
    double total = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            total += wishart_joint_pdf(c32, std::vector<double>{(i + 0.5) * h, (j + 0.5) * h}) * h * h;
    CHECK(total == doctest::Approx(1.0).epsilon(2e-3));
}
