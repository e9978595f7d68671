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
#include "irsbim/sim.hpp"

using namespace irsbim;
using namespace irsbim::sim;
using irsbim::testing::scheme;
using irsbim::testing::small_link;

namespace
{
    TrialConfig small_config(double snr_db = 10.0)
    {
        TrialConfig c;
        c.link = small_link(2, 4);
        c.scheme = scheme(mapping::Scheme::S1, 8, 1, 1, 4);
        c.mode = beampattern::PatternMode::physical;
        c.channel.n_r = 4;
        c.snr_db = snr_db;
        c.detector = detect::DetectorKind::both;
        c.trials = 600;
        c.master_seed = 5;
        return c;
    }

    bool same(const Tally &a, const Tally &b)
    {
        return a.trials == b.trials && a.bits == b.bits && a.errors_ml == b.errors_ml && a.errors_cs == b.errors_cs;
    }
}

TEST_CASE("trials are reproducible")
{
    Simulator s(small_config(0.0));
    for (std::uint64_t i : {0ull, 17ull, 599ull})
    {
        auto a = s.run_trial(i), b = s.run_trial(i);
        CHECK(a.tx == b.tx);
        CHECK(a.rx_ml == b.rx_ml);
        CHECK(a.rx_cs == b.rx_cs);
    }
    Simulator t(small_config(0.0));
    CHECK(same(s.run(), t.run()));
    auto c = small_config(0.0);
    c.master_seed = 6;
    Tally other = Simulator(c).run();
    CHECK(!same(s.run(), other));
}

TEST_CASE("worker count does not change results")
{
    auto c = small_config(0.0);
    Tally one = Simulator(c).run();
    c.workers = 3;
    Tally three = Simulator(c).run();
    c.workers = 7;
    Tally seven = Simulator(c).run();
    CHECK(same(one, three));
    CHECK(same(one, seven));
    CHECK(one.trials == 600);
    CHECK(one.bits == 600 * 5);
}

TEST_CASE("per-trial bookkeeping")
{
    Simulator s(small_config(0.0));
    CHECK(s.bits_per_use() == 5);
    for (std::uint64_t i = 0; i < 200; ++i)
    {
        auto o = s.run_trial(i);
        CHECK(o.tx.size() == 5);
        CHECK(o.rx_ml.size() == 5);
        CHECK(o.rx_cs.size() == 5);
        CHECK(o.errors_ml == mapping::hamming_distance(o.tx, o.rx_ml));
        CHECK(o.errors_ml <= 5);
        CHECK(o.errors_cs <= 5);
    }
    auto c = small_config();
    c.detector = detect::DetectorKind::ml;
    auto o = Simulator(c).run_trial(3);
    CHECK(o.rx_cs.empty());
    CHECK(o.errors_cs == 0);
}

TEST_CASE("noise level limits")
{
    SUBCASE("vanishing noise gives no errors")
    {
        auto c = small_config(150.0);
        c.trials = 300;
        auto t = Simulator(c).run();
        CHECK(t.errors_ml == 0);
        // greedy recovery needs clean beams and enough antennas to be exact
        c.mode = beampattern::PatternMode::ideal;
        c.channel.n_r = 32;
        t = Simulator(c).run();
        CHECK(t.errors_ml == 0);
        CHECK(t.errors_cs == 0);
    }
    SUBCASE("overwhelming noise gives coin flips")
    {
        auto c = small_config(-80.0);
        c.detector = detect::DetectorKind::ml;
        c.trials = 2000;
        auto t = Simulator(c).run();
        double ber = double(t.errors_ml) / double(t.bits);
        CHECK(ber > 0.45);
        CHECK(ber < 0.55);
    }
    SUBCASE("SNR definition")
    {
        Simulator s(small_config(7.0));
        CHECK(s.channel_params().sigmaR_sq == doctest::Approx(s.bank().average_energy() / std::pow(10.0, 0.7)));
        CHECK(noise_variance(s.bank(), 0.0) == doctest::Approx(s.bank().average_energy()));
    }
}

TEST_CASE("estimation error hurts")
{
    auto c = small_config(15.0);
    c.detector = detect::DetectorKind::ml;
    c.trials = 1500;
    auto clean = Simulator(c).run();
    c.est_error.enabled = true;
    c.est_error.variance = 0.5;
    auto noisy = Simulator(c).run();
    CHECK(noisy.errors_ml > clean.errors_ml);
    c.est_error.variance = 0.0;
    auto zero = Simulator(c).run();
    CHECK(same(zero, clean));
}

TEST_CASE("BER points")
{
    auto p = make_point(3.0, 1000, 10, 25);
    CHECK(p.ber == doctest::Approx(0.0025));
    CHECK(p.std_error == doctest::Approx(std::sqrt(0.0025 * 0.9975 / 10000.0)));
    CHECK(p.bit_errors == 25);
    auto z = make_point(0.0, 10, 2, 0);
    CHECK(z.ber == 0.0);
    CHECK(z.std_error == 0.0);
}

TEST_CASE("sweeps")
{
    auto c = small_config();
    c.trials = 100;
    SweepSpec spec;
    spec.values = {0.0, 10.0};
    auto curves = run_sweep(c, spec, "base");
    REQUIRE(curves.size() == 2);
    CHECK(curves[0].detector == "ml");
    CHECK(curves[1].detector == "cs");
    CHECK(curves[0].series == "base");
    CHECK(curves[0].sweep_name == "snr_db");
    CHECK(curves[0].points.size() == 2);
    CHECK(curves[0].points[0].ber >= curves[0].points[1].ber);
    CHECK_FALSE(curves[0].points[0].ub.has_value());

    spec.values.clear();
    CHECK_THROWS_AS(run_sweep(c, spec), Error);

    CHECK(point_seed(1, 0) != point_seed(1, 1));
    CHECK(point_seed(1, 0) != point_seed(2, 0));
    CHECK(apply_sweep_value(c, SweepVar::n_r, 3).channel.n_r == 3);
    CHECK(apply_sweep_value(c, SweepVar::snr_db, 4.5).snr_db == 4.5);
    CHECK(apply_sweep_value(c, SweepVar::k_db, 10.0).channel.k_factor == doctest::Approx(10.0));
    CHECK_THROWS_AS(apply_sweep_value(c, SweepVar::n_r, 2.5), Error);
    CHECK(sweep_var_from_string("n_t") == SweepVar::n_t);
    CHECK(to_string(SweepVar::k_db) == "k_db");
    CHECK_THROWS_AS(sweep_var_from_string("distance"), Error);
}

TEST_CASE("bound points")
{
    auto c = small_config(10.0);
    auto b = bound_at(c, {});
    CHECK(b.method == "closed_form");
    CHECK(b.omega == 32);
    CHECK(b.ber_upper > 0.0);
    CHECK(b.ber_upper <= 1.0);
    SweepSpec spec;
    spec.values = {5.0, 15.0};
    auto pts = run_bound(c, spec);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].ber_upper >= pts[1].ber_upper);
    CHECK(pts[0].value == 5.0);
}

TEST_CASE("configuration checks")
{
    auto c = small_config();
    c.trials = 0;
    CHECK_THROWS_AS(c.validate(), Error);
    c = small_config();
    c.workers = 0;
    CHECK_THROWS_AS(Simulator{c}, Error);
}
