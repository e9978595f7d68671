// SPDX-License-Identifier: Apache-2.0
//
// irsbim - IRS-assisted beam-index modulation simulator
// Copyright (C) 2026 The irsbim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include "helpers.hpp"
#include "irsbim/channel.hpp"
#include "irsbim/stats.hpp"

using namespace irsbim;
using namespace irsbim::channel;

namespace
{
    ChannelParams params(int n_r, int n_cols, double k)
    {
        ChannelParams p;
        p.n_r = n_r;
        p.n_cols = n_cols;
        p.k_factor = k;
        p.los_seed = 77;
        return p;
    }
}

TEST_CASE("line-of-sight limit")
{
    auto p = params(3, 5, std::numeric_limits<double>::infinity());
    Rng rng(1);
    auto c = sample_channel(p, rng);
    CHECK((c.h - c.h_bar).norm() == 0.0);
    CHECK(c.sigma_tilde_c.norm() == 0.0);
    CHECK(c.h.cwiseAbs().minCoeff() == doctest::Approx(1.0));
    CHECK(k_from_string("inf") == std::numeric_limits<double>::infinity());
    CHECK(k_from_string("rayleigh") == 0.0);
    CHECK(k_from_db(10.0) == doctest::Approx(10.0));
    CHECK(k_from_db(0.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(k_from_string("strong"), Error);
}

TEST_CASE("Rayleigh entries have unit second moment")
{
    auto p = params(2, 3, 0.0);
    Rng rng(2);
    const int n = 100000 / 6 + 1;
    std::vector<double> e2;
    for (int t = 0; t < n; ++t)
    {
        CMatrix h = sample_h(p, los_matrix(2, 3, p.los_seed), rng);
        for (Eigen::Index i = 0; i < h.size(); ++i)
            e2.push_back(std::norm(h.data()[i]));
    }
    double m = stats::mean(e2), se = std::sqrt(stats::variance(e2) / double(e2.size()));
    CHECK(std::fabs(m - 1.0) < 3 * se);
}

TEST_CASE("Rician moments")
{
    const int n_r = 2, n_c = 4, draws = 100000;
    auto p = params(n_r, n_c, 1.0);
    CMatrix los = los_matrix(n_r, n_c, p.los_seed);
    CMatrix hb = mean_matrix(p);
    CHECK((hb - std::sqrt(0.5) * los).norm() < 1e-14);
    Rng rng(3);
    CMatrix sum = CMatrix::Zero(n_r, n_c);
    CMatrix cov = CMatrix::Zero(n_c, n_c);
    CMatrix gram = CMatrix::Zero(n_c, n_c);
    for (int t = 0; t < draws; ++t)
    {
        CMatrix h = sample_h(p, los, rng);
        sum += h;
        CMatrix d = h - hb;
        cov += d.adjoint() * d;
        gram += h.adjoint() * h;
    }
    SUBCASE("mean")
    {
        // per-entry sd of the mean is sqrt(0.5 / draws) for the diffuse part of variance 1/2
        CMatrix mean = sum / double(draws);
        double se = std::sqrt(0.5 / draws);
        CHECK((mean - hb).cwiseAbs().maxCoeff() < 4 * se);
    }
    SUBCASE("row covariance close to I/2")
    {
        CMatrix rc = cov / double(draws * n_r);
        CMatrix expect = row_covariance(p);
        CHECK((expect - 0.5 * CMatrix::Identity(n_c, n_c)).norm() < 1e-15);
        CHECK((rc - expect).norm() / expect.norm() < 0.02);
    }
    SUBCASE("effective covariance equals E[H^H H] / n_r")
    {
        CMatrix emp = gram / double(draws * n_r);
        CMatrix sc = effective_covariance(p);
        CHECK((emp - sc).norm() / sc.norm() < 0.02);
        // Hermitian PSD
        CHECK((sc - sc.adjoint()).norm() == 0.0);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(sc);
        CHECK(es.eigenvalues().minCoeff() > -1e-12);
    }
}

TEST_CASE("LOS matrix is fixed by its seed")
{
    CMatrix a = los_matrix(4, 6, 9), b = los_matrix(4, 6, 9), c = los_matrix(4, 6, 10);
    CHECK((a - b).norm() == 0.0);
    CHECK((a - c).norm() > 0.1);
    CHECK((a.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-14);
    Eigen::JacobiSVD<CMatrix> svd(a);
    CHECK(svd.singularValues()[1] < 1e-10);
}

TEST_CASE("noise covariance")
{
    Rng rng(4);
    CMatrix h = complex_normal_matrix(3, 5, rng);
    CHECK((noise_cov(h, 0.0, 0.7) - 0.7 * CMatrix::Identity(3, 3)).norm() == 0.0);
    CHECK((noise_cov(CMatrix::Identity(3, 3), 1.0, 1.0) - 2.0 * CMatrix::Identity(3, 3)).norm() < 1e-15);
    CMatrix s = noise_cov(h, 0.3, 0.5);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
        {
            cplx d = 0;
            for (int k = 0; k < 5; ++k)
                d += h(i, k) * std::conj(h(j, k));
            d = d * 0.3 + (i == j ? 0.5 : 0.0);
            CHECK(std::abs(s(i, j) - d) < 1e-13);
        }
    CHECK((s - s.adjoint()).norm() == 0.0);
    CHECK_THROWS_AS(noise_cov(h, 0.0, 0.0), Error);
}

TEST_CASE("noise sampling reproduces the covariance")
{
    Rng rng(5);
    SUBCASE("diag(4, 1)")
    {
        CMatrix s = CMatrix::Zero(2, 2);
        s(0, 0) = 4;
        s(1, 1) = 1;
        std::vector<double> v0;
        for (int t = 0; t < 100000; ++t)
            v0.push_back(std::norm(sample_noise(s, rng)[0]));
        double m = stats::mean(v0), se = std::sqrt(stats::variance(v0) / double(v0.size()));
        CHECK(std::fabs(m - 4.0) < 3 * se);
    }
    SUBCASE("random 4x4 within 3 percent")
    {
        CMatrix g = complex_normal_matrix(4, 4, rng);
        CMatrix s = g * g.adjoint() + 0.5 * CMatrix::Identity(4, 4);
        CMatrix acc = CMatrix::Zero(4, 4);
        const int n = 100000;
        for (int t = 0; t < n; ++t)
        {
            CVector w = sample_noise(s, rng);
            acc += w * w.adjoint();
        }
        CHECK((acc / double(n) - s).norm() / s.norm() < 0.03);
    }
    SUBCASE("zero matrix rejected")
    {
        CHECK_THROWS_AS(sample_noise(CMatrix::Zero(2, 2), rng), Error);
    }
}

TEST_CASE("estimation error")
{
    Rng rng(6);
    CMatrix h = complex_normal_matrix(4, 8, rng);
    CHECK((perturb_channel(h, 0.0, rng) - h).norm() == 0.0);
    std::vector<double> e;
    for (int t = 0; t < 20000; ++t)
        e.push_back((perturb_channel(h, 0.25, rng) - h).squaredNorm());
    double m = stats::mean(e), se = std::sqrt(stats::variance(e) / double(e.size()));
    CHECK(std::fabs(m - 4 * 8 * 0.25) < 3 * se);
}

TEST_CASE("Rayleigh Gram matrix follows the central Wishart law")
{
    // reference draws from an independent generator
    const int n = 10000, n_r = 4, n_c = 3;
    auto p = params(n_r, n_c, 0.0);
    CMatrix los = los_matrix(n_r, n_c, 1);
    Rng rng(7), ref_rng(8);
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    std::vector<double> a, b;
    for (int t = 0; t < n; ++t)
    {
        CMatrix h = sample_h(p, los, rng);
        CMatrix g(n_r, n_c);
        for (int i = 0; i < n_r; ++i)
            for (int j = 0; j < n_c; ++j)
                g(i, j) = cplx(nd(ref_rng), nd(ref_rng));
        a.push_back(Eigen::SelfAdjointEigenSolver<CMatrix>(h.adjoint() * h).eigenvalues()[0]);
        b.push_back(Eigen::SelfAdjointEigenSolver<CMatrix>(g.adjoint() * g).eigenvalues()[0]);
    }
    CHECK(stats::ks_two_sample(a, b).p_value > 0.01);
}

TEST_CASE("parameter validation")
{
    auto p = params(0, 3, 0.0);
    CHECK_THROWS_AS(p.validate(), Error);
    auto q = params(2, 3, -1.0);
    CHECK_THROWS_AS(q.validate(), Error);
}
