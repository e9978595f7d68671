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
#include "irsbim/config.hpp"

using namespace irsbim;
using namespace irsbim::config;

namespace
{
    std::string where_of(const std::string &text)
    {
        try
        {
            parse_config(text);
        }
        catch (const ConfigError &e)
        {
            return e.where();
        }
        return "<none>";
    }
}

TEST_CASE("defaults")
{
    auto c = parse_config(R"({"schema_version": 1})");
    REQUIRE(c.series.size() == 1);
    const auto &t = c.base();
    CHECK(c.name == "run");
    CHECK(c.out_dir == "out");
    CHECK_FALSE(c.plot);
    CHECK(t.link.irs1.n_h == 100);
    CHECK(t.link.irs1.spacing == 2.5e-3);
    CHECK(t.link.irs2.size() == 64);
    CHECK(t.link.distance == 30.0);
    CHECK(t.scheme.scheme == mapping::Scheme::S1);
    CHECK(t.scheme.constellation.order() == 16);
    CHECK(t.channel.n_r == 16);
    CHECK(t.channel.k_factor == doctest::Approx(1.0));
    CHECK(t.optimizer == snr_opt::Method::identity);
    CHECK(t.detector == detect::DetectorKind::both);
    CHECK(t.trials == 10000);
    CHECK(t.snr_db == 10.0);
    CHECK_FALSE(t.est_error.enabled);
    CHECK(c.sweep.values.empty());
    CHECK(default_document()["schema_version"] == kSchemaVersion);
}

TEST_CASE("schemes")
{
    auto s2 = parse_config(R"({"schema_version": 1, "modulation": {"scheme": "S2"}})").base();
    CHECK(s2.scheme.n_t == 2);
    CHECK(mapping::bpcu(s2.scheme) == 14);
    auto s3 = parse_config(R"({"schema_version": 1, "modulation": {"scheme": "S3"}})").base();
    CHECK(s3.scheme.n2 == 16);
    CHECK(s3.scheme.n3 == 4);
    CHECK(s3.optimizer == snr_opt::Method::sol1);
    CHECK(mapping::bpcu(s3.scheme) == 8);
    CHECK(s3.link.columns() == 64);
    auto s3b = parse_config(R"({"schema_version": 1, "modulation": {"scheme": "S3"}, "optimizer": {"method": "sol2"}})");
    CHECK(s3b.base().optimizer == snr_opt::Method::sol2);
    CHECK(where_of(R"({"schema_version": 1, "optimizer": {"method": "sol1"}})") == "/optimizer/method");
    CHECK(where_of(R"({"schema_version": 1, "modulation": {"n_t": 2}})") == "/modulation/n_t");
    CHECK(where_of(R"({"schema_version": 1, "modulation": {"scheme": "S3", "rs_h": 3}})") == "/modulation/rs_h");
    CHECK(where_of(R"({"schema_version": 1, "modulation": {"order": 12}})") == "/modulation/order");
}

TEST_CASE("channel fields")
{
    auto r = parse_config(R"({"schema_version": 1, "channel": {"k_db": "rayleigh", "estimation_error": "sigma_r"}})");
    CHECK(r.base().channel.k_factor == 0.0);
    CHECK(r.base().est_error.enabled);
    CHECK(r.base().est_error.tracks_noise);
    auto l = parse_config(R"({"schema_version": 1, "channel": {"k_db": "inf", "estimation_error": 0.01}})");
    CHECK(std::isinf(l.base().channel.k_factor));
    CHECK(l.base().est_error.variance == 0.01);
    CHECK_FALSE(l.base().est_error.tracks_noise);
    CHECK(where_of(R"({"schema_version": 1, "channel": {"k_db": "strong"}})") == "/channel/k_db");
    CHECK(where_of(R"({"schema_version": 1, "channel": {"n_r": 0}})") == "/channel/n_r");
    CHECK(where_of(R"({"schema_version": 1, "channel": {"estimation_error": "big"}})") == "/channel/estimation_error");
}

TEST_CASE("syntax and field errors carry locations")
{
    std::string bad = "{\n  \"schema_version\": 1,\n  \"name\": \"x\",,\n}";
    std::string w = where_of(bad);
    CHECK(w.rfind("line 3, column", 0) == 0);
    CHECK(where_of(R"({"schema_version": 1, "channel": {"n_rx": 4}})") == "/channel/n_rx");
    CHECK(where_of(R"({"schema_version": 1, "extra": 1})") == "/extra");
    CHECK(where_of(R"({"name": "x"})") == "/schema_version");
    CHECK(where_of(R"({"schema_version": 2})") == "/schema_version");
    CHECK(where_of(R"({"schema_version": 1, "sim": {"trials": "many"}})") == "/sim/trials");
    CHECK(where_of(R"({"schema_version": 1, "name": "a/b"})") == "/name");
    CHECK(where_of(R"({"schema_version": 1, "geometry": {"irs1": {"spacing": -1}}})") == "/geometry/irs1/spacing");
    CHECK(where_of(R"({"schema_version": 1, "sweep": {"var": "snr_db"}})") == "/sweep/values");
    CHECK(where_of(R"({"schema_version": 1, "sweep": {"var": "n_r", "values": [4, 2.5]}})") == "/sweep/values/1");
    CHECK(where_of(R"({"schema_version": 1, "sweep": {"var": "speed", "values": [1]}})") == "/sweep/var");
    CHECK(where_of(R"({"schema_version": 1, "bound": {"n_samples": 10}})") == "/bound/n_samples");
    CHECK(where_of(R"({"schema_version": 1, "output": {"dir": ""}})") == "/output/dir");
    CHECK(where_of(R"([1, 2])") == "/");
}

TEST_CASE("series")
{
    auto c = parse_config(R"({
        "schema_version": 1,
        "name": "cmp",
        "sim": {"trials": 50},
        "series": [
            {"label": "rayleigh", "channel": {"k_db": "rayleigh"}},
            {"label": "k10", "channel": {"k_db": 10}, "sim": {"trials": 70}}
        ],
        "sweep": {"var": "snr_db", "values": [0, 10]},
        "bound": {"enabled": true, "n_samples": 150, "sample_pairs": 512},
        "output": {"dir": "somewhere", "plot": true}
    })");
    REQUIRE(c.series.size() == 2);
    CHECK(c.series[0].label == "rayleigh");
    CHECK(c.series[0].trial.channel.k_factor == 0.0);
    CHECK(c.series[0].trial.trials == 50);
    CHECK(c.series[1].trial.channel.k_factor == doctest::Approx(10.0));
    CHECK(c.series[1].trial.trials == 70);
    CHECK(c.sweep.values == std::vector<double>{0.0, 10.0});
    CHECK(c.sweep.with_bound);
    CHECK(c.sweep.bound.n_samples == 150);
    CHECK(c.sweep.bound.sample_pairs == 512);
    CHECK(c.out_dir == "somewhere");
    CHECK(c.plot);

    std::string w = where_of(R"({"schema_version": 1, "series": [{"label": "a", "channel": {"bogus": 1}}]})");
    CHECK(w == "/series/0 -> /channel/bogus");
    CHECK(where_of(R"({"schema_version": 1, "series": [{"label": "a"}, {"label": "a"}]})") == "/series/1/label");
    CHECK(where_of(R"({"schema_version": 1, "series": []})") == "/series");
}

TEST_CASE("overrides and hashing")
{
    auto c = parse_config(R"({"schema_version": 1, "sim": {"trials": 50, "seed": 3}})");
    std::string h0 = canonical_text(c, {});
    Overrides o;
    o.seed = 9;
    o.trials = 20;
    o.workers = 4;
    o.out_dir = "elsewhere";
    apply_overrides(c, o);
    CHECK(c.base().master_seed == 9);
    CHECK(c.base().trials == 20);
    CHECK(c.base().workers == 4);
    CHECK(c.out_dir == "elsewhere");
    CHECK(canonical_text(c, o) != h0);

    // workers and output location do not change what is computed
    auto a = parse_config(R"({"schema_version": 1})");
    auto b = parse_config(R"({"schema_version": 1, "sim": {"workers": 3}, "output": {"dir": "x"}})");
    CHECK(canonical_text(a, {}) == canonical_text(b, {}));
    CHECK_THROWS_AS(load_config("/nonexistent/file.json"), ConfigError);
}
