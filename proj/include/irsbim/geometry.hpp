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

#include <string>
#include <vector>

namespace irsbim::geometry
{
    // Chosen so that 60 GHz gives exactly 5 mm
    constexpr double kSpeedOfLight = 3.0e8;

    struct Direction
    {
        double azimuth = 0.0;   // phi_h [rad]
        double elevation = 0.0; // phi_v [rad]
    };

    // Planar rectangular array. Element (r, c) sits at
    // center + (r - (n_h-1)/2) * spacing * axis_h + (c - (n_w-1)/2) * spacing * axis_w
    struct ArrayConfig
    {
        int n_h = 1;
        int n_w = 1;
        double spacing = 2.5e-3;
        double carrier_freq = 60.0e9;
        Vec3 center = Vec3::Zero();
        Vec3 axis_h = Vec3::UnitZ(); // row direction
        Vec3 axis_w = Vec3::UnitX(); // column direction

        int size() const { return n_h * n_w; }
        double wavelength() const { return kSpeedOfLight / carrier_freq; }
        double aperture() const; // longest side, n * spacing
        Vec3 normal() const;     // boresight, axis_h x axis_w
        void validate() const;
    };

    struct LinkGeometry
    {
        ArrayConfig irs1;
        ArrayConfig irs2;
        double distance = 30.0;     // D [m]
        double element_width = 0.1; // d_w [m]

        // One entry per column of H. Ungrouped: IRS2 row-major element order.
        std::vector<Direction> directions;
        std::vector<int> column_element; // IRS2 element index of each column
        int group_h = 1, group_w = 1;     // reflecting-surface shape when grouped

        int group_size() const { return group_h * group_w; }
        int columns() const { return int(directions.size()); }
        void validate() const;
    };

    // Builds the standard facing layout: IRS1 at the origin with boresight +y,
    // IRS2 centered at (0, D, 0) with the same in-plane axes.
    LinkGeometry make_link(const ArrayConfig &irs1, int irs2_n_h, int irs2_n_w, double irs2_spacing,
                           double distance, double element_width);

    std::vector<Vec3> element_positions(const ArrayConfig &cfg);

    // Unit vector of a direction expressed in the array's frame mapped to global coordinates
    Vec3 unit_direction(const ArrayConfig &cfg, const Direction &dir);

    // psi_m = 2 pi f (P_m . u) / c mod 2 pi
    RVector steering_phases(const ArrayConfig &cfg, const Direction &dir);

    // Directions of IRS2 elements seen from the IRS1 center, IRS2 row-major order
    std::vector<Direction> target_directions(const LinkGeometry &link);

    // Reorders the columns so every rs_h x rs_w reflecting surface is contiguous
    LinkGeometry group_by_surface(const LinkGeometry &link, int rs_h, int rs_w);

    struct RuleCheck
    {
        int rule = 0;
        std::string name;
        bool passed = true;
        bool informational = false;
        double measured = 0.0;
        double threshold = 0.0;
        std::string note;
    };

    double beamwidth_rad(const ArrayConfig &irs1);

    // Five records, rule ids 1..5. Rules 4 and 5 are informational.
    std::vector<RuleCheck> validate_design(const LinkGeometry &link, int modulation_order = 16);

    bool hard_rules_pass(const std::vector<RuleCheck> &checks);
}
