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


#pragma once

#include "irsbim/sim.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace irsbim::report
{
    // Numbers are printed with %.10g so reruns are byte-identical
    std::string fmt(double x);

    // sweep_var,value,detector,scheme,ber,stderr,trials[,ub]
    void write_ber_csv(const sim::BerCurve &curve, std::ostream &os);

    // sweep_var,value,ber_upper,stderr,omega,pairs_evaluated,method
    void write_bound_csv(const std::vector<sim::BoundPoint> &points, sim::SweepVar var, std::ostream &os);

    // Lowercase alphanumerics; other runs fold to one '_', none at the ends
    std::string slug(const std::string &s);

    struct PlotSeries
    {
        std::string label;
        std::vector<double> x;
        std::vector<double> y;
        bool dashed = false;
    };

    struct Plot
    {
        std::string title;
        std::string x_label;
        std::string y_label = "BER";
        bool log_y = true;
        std::vector<PlotSeries> series;
    };

    // Self-contained SVG line plot; non-positive values are skipped on a log axis
    std::string render_svg(const Plot &plot);

    struct OutputFile
    {
        std::string name;
        std::uint64_t hash = 0;
    };

    struct Manifest
    {
        std::string command;
        std::string config_hash;
        std::uint64_t seed = 0;
        std::vector<OutputFile> outputs;
    };

    std::string manifest_json(const Manifest &m);

    // Writes `content` to dir/name and records it in the manifest
    void write_file(const std::string &dir, const std::string &name, const std::string &content, Manifest &m);

    std::string hex64(std::uint64_t v);
}
