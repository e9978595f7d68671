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
#include "irsbim/beampattern.hpp"

#include <sstream>

using namespace irsbim;
using namespace irsbim::beampattern;
using geometry::ArrayConfig;
using geometry::Direction;
using mapping::Scheme;
using testing::scheme;

TEST_CASE("array response")
{
    SUBCASE("unit gain on target")
    {
        ArrayConfig cfg;
        cfg.n_h = 6;
        cfg.n_w = 5;
        Direction d{0.4, -0.3};
        auto psi = geometry::steering_phases(cfg, d);
        CHECK(std::abs(array_response(cfg, psi, d)) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("two-element broadside pair has a null at endfire")
    {
        ArrayConfig cfg;
        cfg.n_h = 1;
        cfg.n_w = 2;
        cfg.spacing = cfg.wavelength() / 2;
        auto psi = geometry::steering_phases(cfg, {0.0, 0.0});
        Direction endfire{kPi / 2, 0.0};
        CHECK(std::abs(array_response(cfg, psi, endfire)) < 1e-12);
    }
    SUBCASE("neighbouring IRS2 element is outside the main lobe")
    {
        auto link = testing::paper_link();
        int n = 27;
        auto psi = geometry::steering_phases(link.irs1, link.directions[size_t(n)]);
        for (int m : {26, 28, 19, 35})
            CHECK(std::abs(array_response(link.irs1, psi, link.directions[size_t(m)])) < 0.1);
        CHECK(std::abs(array_response(link.irs1, psi, link.directions[size_t(n)])) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("separable fast path agrees with the direct sum")
    {
        Rng rng(2);
        std::uniform_real_distribution<double> ang(-0.6, 0.6);
        ArrayConfig cfg;
        cfg.n_h = 12;
        cfg.n_w = 9;
        cfg.center = Vec3(0.01, 0.2, -0.03);
        for (int t = 0; t < 50; ++t)
        {
            Direction s{ang(rng), ang(rng)}, e{ang(rng), ang(rng)};
            cplx direct = array_response(cfg, geometry::steering_phases(cfg, s), e);
            cplx fast = steered_gain(cfg, s, e);
            CHECK(std::abs(direct - fast) < 1e-9);
        }
        auto link = testing::paper_link();
        for (int m : {0, 9, 63})
        {
            cplx direct = array_response(link.irs1, geometry::steering_phases(link.irs1, link.directions[0]),
                                         link.directions[size_t(m)]);
            cplx fast = steered_gain(link.irs1, link.directions[0], link.directions[size_t(m)]);
            CHECK(std::abs(direct - fast) < 1e-9);
        }
    }
}

TEST_CASE("beam vectors")
{
    auto link = testing::paper_link();
    SUBCASE("ideal single target is a unit vector")
    {
        auto b = beam_vector(link, {5}, PatternMode::ideal).amplitudes;
        CHECK(b[5] == cplx(1.0));
        CHECK(b.squaredNorm() == doctest::Approx(1.0));
    }
    SUBCASE("physical beam peaks on its target")
    {
        for (int n = 0; n < 64; ++n)
        {
            auto b = beam_vector(link, {n}, PatternMode::physical).amplitudes;
            Eigen::Index arg;
            b.cwiseAbs().maxCoeff(&arg);
            CHECK(arg == n);
            CHECK(std::abs(b[n]) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("two targets superpose")
    {
        auto a = beam_vector(link, {3}, PatternMode::physical).amplitudes;
        auto b = beam_vector(link, {40}, PatternMode::physical).amplitudes;
        auto ab = beam_vector(link, {3, 40}, PatternMode::physical).amplitudes;
        CHECK((ab - a - b).norm() < 1e-12);
    }
    SUBCASE("energy concentrates on the target span")
    {
        auto g = geometry::group_by_surface(link, 2, 2);
        for (int q : {0, 5, 15})
        {
            auto b = beam_vector(g, {q}, PatternMode::physical).amplitudes;
            double in = b.segment(q * 4, 4).squaredNorm();
            CHECK(in / b.squaredNorm() > 0.8);
        }
        for (int n : {0, 27, 63})
        {
            auto b = beam_vector(link, {n}, PatternMode::physical).amplitudes;
            CHECK(std::norm(b[n]) / b.squaredNorm() > 0.8);
        }
    }
}

TEST_CASE("pattern banks")
{
    auto link = testing::paper_link();
    SUBCASE("S1 has 1024 patterns ordered by (set, symbol)")
    {
        auto bank = build_bank(link, scheme(Scheme::S1, 64, 1, 1, 16), PatternMode::physical);
        CHECK(bank.omega() == 1024);
        CHECK(bank.set_of(bank.pattern_id(7, 3)) == 7);
        CHECK(bank.symbol_of(bank.pattern_id(7, 3)) == 3);
        auto bits = bank.bits_of(bank.pattern_id(7, 3));
        CHECK(bits == mapping::decode({{7}, 3, {}}, bank.scheme));
    }
    SUBCASE("S2 keeps only the addressable sets")
    {
        auto bank = build_bank(link, scheme(Scheme::S2, 64, 2, 1, 16), PatternMode::ideal);
        CHECK(bank.omega() == 16384);
        CHECK(bank.num_sets() == 1024);
    }
    SUBCASE("ideal S1 patterns have one non-zero entry")
    {
        auto bank = build_bank(link, scheme(Scheme::S1, 64, 1, 1, 16), PatternMode::ideal);
        for (int p = 0; p < bank.omega(); p += 7)
        {
            auto v = bank.pattern(p);
            int nz = 0;
            for (Eigen::Index e = 0; e < v.size(); ++e)
                nz += std::abs(v[e]) > 0;
            CHECK(nz == 1);
        }
    }
    SUBCASE("symbol scaling and determinism")
    {
        auto b1 = build_bank(link, scheme(Scheme::S1, 64, 1, 1, 4), PatternMode::physical);
        auto b2 = build_bank(link, scheme(Scheme::S1, 64, 1, 1, 4), PatternMode::physical);
        CHECK((b1.set_beams - b2.set_beams).norm() == 0.0);
        for (int s = 0; s < b1.num_sets(); s += 9)
            for (int k = 0; k < 4; ++k)
            {
                CVector expect = b1.set_beams.col(s) * b1.symbols[size_t(k)];
                CHECK((b1.pattern(b1.pattern_id(s, k)) - expect).norm() == 0.0);
            }
    }
    SUBCASE("S3 grouping and column checks")
    {
        auto g = geometry::group_by_surface(link, 2, 2);
        auto bank = build_bank(g, scheme(Scheme::S3, 16, 1, 4, 16), PatternMode::ideal);
        CHECK(bank.omega() == 256);
        CHECK(bank.pattern(0).segment(0, 4).cwiseAbs().minCoeff() > 0);
        CHECK_THROWS_AS(build_bank(link, scheme(Scheme::S3, 16, 1, 4, 16), PatternMode::ideal), Error);
    }
    SUBCASE("cap")
    {
        CHECK_THROWS_AS(build_bank(link, scheme(Scheme::S2, 64, 2, 1, 16), PatternMode::ideal, 1000), Error);
    }
    SUBCASE("csv export")
    {
        auto small = testing::small_link(1, 2);
        auto bank = build_bank(small, scheme(Scheme::S1, 2, 1, 1, 2), PatternMode::ideal);
        std::ostringstream os;
        write_bank_csv(bank, os);
        std::string s = os.str();
        CHECK(s.rfind("pattern_id,element,re,im\n", 0) == 0);
        CHECK(std::count(s.begin(), s.end(), '\n') == 1 + 4 * 2);
    }
}
