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

#include "irsbim/common.hpp"
#include "irsbim/geometry.hpp"
#include "irsbim/sim.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace irsbim::config
{
    constexpr int kSchemaVersion = 1;

    // Parse or validation failure. `where` is "line L, column C" for syntax errors
    // and a JSON pointer such as /channel/k_db for field errors.
    class ConfigError : public Error
    {
    public:
        ConfigError(const std::string &where, const std::string &what)
            : Error(where.empty() ? what : where + ": " + what), where_(where), message_(what)
        {
        }
        const std::string &where() const { return where_; }
        const std::string &message() const { return message_; }

    private:
        std::string where_;
        std::string message_;
    };

    struct Series
    {
        std::string label;
        sim::TrialConfig trial;
    };

    struct RunConfig
    {
        std::string name = "run";
        nlohmann::json document; // as loaded, defaults not expanded
        std::vector<Series> series; // the base config alone when no series are given
        sim::SweepSpec sweep;
        std::string out_dir = "out";
        bool plot = false;

        const sim::TrialConfig &base() const { return series.front().trial; }
    };

    // Paper-scale defaults: 100x100 IRS1 at 2.5 mm, 8x8 IRS2 at 0.6 m, D = 30 m, 60 GHz, 16-QAM
    nlohmann::json default_document();

    RunConfig parse_config(const std::string &text);
    RunConfig load_config(const std::string &path);

    // Trial configuration from one fully merged block set
    sim::TrialConfig build_trial(const nlohmann::json &merged);

    // Link geometry described by the geometry and modulation blocks
    geometry::LinkGeometry build_link(const nlohmann::json &merged);

    // Command-line overrides; negative / empty values leave the config untouched
    struct Overrides
    {
        std::int64_t seed = -1;
        std::int64_t trials = -1;
        int workers = -1;
        std::string out_dir;
        bool plot = false;
    };

    void apply_overrides(RunConfig &cfg, const Overrides &o);

    // Stable text used for hashing
    std::string canonical_text(const RunConfig &cfg, const Overrides &o);
}
