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
#include "irsbim/report.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace irsbim;
using namespace irsbim::report;

TEST_CASE("number formatting")
{
    CHECK(fmt(0.5) == "0.5");
    CHECK(fmt(1e-7) == "1e-07");
    CHECK(fmt(123456789012.0) == "1.23456789e+11");
    CHECK(fmt(1234567890.0) == "1234567890");
    CHECK(fmt(1.0 / 3.0) == "0.3333333333");
}

TEST_CASE("BER table")
{
    sim::BerCurve c;
    c.sweep_name = "snr_db";
    c.detector = "ml";
    c.scheme = "S1";
    c.points.push_back(sim::make_point(0.0, 100, 10, 50));
    c.points.push_back(sim::make_point(5.0, 100, 10, 5));
    std::ostringstream os;
    write_ber_csv(c, os);
    std::string s = os.str();
    CHECK(s.rfind("sweep_var,value,detector,scheme,ber,stderr,trials\n", 0) == 0);
    CHECK(s.find("snr_db,0,ml,S1,0.05,") != std::string::npos);
    CHECK(std::count(s.begin(), s.end(), '\n') == 3);

    c.points[0].ub = 0.1;
    c.points[1].ub = 0.01;
    std::ostringstream os2;
    write_ber_csv(c, os2);
    CHECK(os2.str().rfind("sweep_var,value,detector,scheme,ber,stderr,trials,ub\n", 0) == 0);
    CHECK(os2.str().find(",100,0.01\n") != std::string::npos);
}

TEST_CASE("bound table")
{
    sim::BoundPoint p;
    p.value = 10;
    p.ber_upper = 8e-4;
    p.omega = 1024;
    p.pairs_evaluated = 1047552;
    p.method = "closed_form";
    std::ostringstream os;
    write_bound_csv({p}, sim::SweepVar::snr_db, os);
    CHECK(os.str() == "sweep_var,value,ber_upper,stderr,omega,pairs_evaluated,method\n"
                      "snr_db,10,0.0008,0,1024,1047552,closed_form\n");
}

TEST_CASE("plot")
{
    Plot p;
    p.title = "t <&>";
    p.x_label = "SNR [dB]";
    p.series.push_back({"ml", {0, 5, 10}, {0.1, 0.01, 0.0}, false});
    p.series.push_back({"bound", {0, 5, 10}, {0.2, 0.02, 0.002}, true});
    std::string svg = render_svg(p);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("t &lt;&amp;&gt;") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    CHECK(svg == render_svg(p));
    Plot empty;
    CHECK_NOTHROW(render_svg(empty));
}

TEST_CASE("manifest and files")
{
    CHECK(slug("K = 10 dB") == "k_10_db");
    CHECK(slug("--sol1--") == "sol1");
    CHECK(hex64(255) == "00000000000000ff");

    auto dir = std::filesystem::temp_directory_path() / "irsbim_report_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    Manifest m;
    m.command = "sweep";
    m.config_hash = "abc";
    m.seed = 4;
    write_file(dir.string(), "a.csv", "x,y\n1,2\n", m);
    REQUIRE(m.outputs.size() == 1);
    CHECK(m.outputs[0].hash == fnv1a64("x,y\n1,2\n"));
    std::ifstream in(dir / "a.csv");
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "x,y\n1,2\n");

    auto j = nlohmann::json::parse(manifest_json(m));
    CHECK(j["command"] == "sweep");
    CHECK(j["seed"] == 4);
    CHECK(j["outputs"][0]["file"] == "a.csv");
    CHECK(j.contains("version"));
    CHECK(manifest_json(m) == manifest_json(m));
    std::filesystem::remove_all(dir);
}
