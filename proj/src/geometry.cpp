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

#include "irsbim/geometry.hpp"

#include <cmath>
#include <sstream>

namespace irsbim::geometry
{
    double ArrayConfig::aperture() const
    {
        return std::max(n_h, n_w) * spacing;
    }

    Vec3 ArrayConfig::normal() const
    {
        return axis_h.cross(axis_w);
    }

    void ArrayConfig::validate() const
    {
        if (n_h < 1 || n_w < 1)
            throw Error("ArrayConfig: element counts must be >= 1");
        if (!(spacing > 0.0) || !(carrier_freq > 0.0))
            throw Error("ArrayConfig: spacing and carrier frequency must be positive");
        if (std::fabs(axis_h.norm() - 1.0) > 1e-12 || std::fabs(axis_w.norm() - 1.0) > 1e-12)
            throw Error("ArrayConfig: orientation axes must be unit vectors");
        if (std::fabs(axis_h.dot(axis_w)) > 1e-12)
            throw Error("ArrayConfig: orientation axes must be orthogonal");
    }

    void LinkGeometry::validate() const
    {
        irs1.validate();
        irs2.validate();
        if (!(distance > 0.0))
            throw Error("LinkGeometry: distance must be positive");
        if (directions.size() != column_element.size())
            throw Error("LinkGeometry: direction and column tables differ in length");
        if (int(directions.size()) != irs2.size())
            throw Error("LinkGeometry: one direction per IRS2 element expected");
        for (const auto &d : directions)
            if (!(std::fabs(d.azimuth) < kPi / 2) || !(std::fabs(d.elevation) < kPi / 2))
                throw Error("LinkGeometry: direction outside the front half-space");
    }

    std::vector<Vec3> element_positions(const ArrayConfig &cfg)
    {
        cfg.validate();
        std::vector<Vec3> pos;
        pos.reserve(cfg.size());
        double r0 = 0.5 * (cfg.n_h - 1), c0 = 0.5 * (cfg.n_w - 1);
        for (int r = 0; r < cfg.n_h; ++r)
            for (int c = 0; c < cfg.n_w; ++c)
                pos.push_back(cfg.center + (r - r0) * cfg.spacing * cfg.axis_h + (c - c0) * cfg.spacing * cfg.axis_w);
        return pos;
    }

    Vec3 unit_direction(const ArrayConfig &cfg, const Direction &dir)
    {
        double ch = std::cos(dir.azimuth), sh = std::sin(dir.azimuth);
        double cv = std::cos(dir.elevation), sv = std::sin(dir.elevation);
        return sh * cv * cfg.axis_w + ch * cv * cfg.normal() + sv * cfg.axis_h;
    }

    RVector steering_phases(const ArrayConfig &cfg, const Direction &dir)
    {
        if (!(std::fabs(dir.azimuth) < kPi / 2) || !(std::fabs(dir.elevation) < kPi / 2))
            throw Error("steering_phases: direction outside the front half-space");
        auto pos = element_positions(cfg);
        Vec3 u = unit_direction(cfg, dir);
        double k = 2.0 * kPi * cfg.carrier_freq / kSpeedOfLight;
        RVector psi(pos.size());
        for (size_t m = 0; m < pos.size(); ++m)
        {
            double p = std::fmod(k * pos[m].dot(u), 2.0 * kPi);
            if (p < 0.0)
                p += 2.0 * kPi;
            if (p >= 2.0 * kPi)
                p = 0.0;
            psi[Eigen::Index(m)] = p;
        }
        return psi;
    }

    std::vector<Direction> target_directions(const LinkGeometry &link)
    {
        const ArrayConfig &a = link.irs1;
        Vec3 n = a.normal();
        std::vector<Direction> out;
        for (const Vec3 &p : element_positions(link.irs2))
        {
            Vec3 v = p - a.center;
            double lx = v.dot(a.axis_w), ly = v.dot(n), lz = v.dot(a.axis_h);
            if (!(ly > 0.0))
                throw Error("target_directions: IRS2 element lies behind the IRS1 plane");
            double r = v.norm();
            out.push_back({std::atan2(lx, ly), std::asin(lz / r)});
        }
        return out;
    }

    LinkGeometry make_link(const ArrayConfig &irs1, int irs2_n_h, int irs2_n_w, double irs2_spacing,
                           double distance, double element_width)
    {
        LinkGeometry link;
        link.irs1 = irs1;
        link.irs2.n_h = irs2_n_h;
        link.irs2.n_w = irs2_n_w;
        link.irs2.spacing = irs2_spacing;
        link.irs2.carrier_freq = irs1.carrier_freq;
        link.irs2.axis_h = irs1.axis_h;
        link.irs2.axis_w = irs1.axis_w;
        link.irs2.center = irs1.center + distance * irs1.normal();
        link.distance = distance;
        link.element_width = element_width;
        link.irs1.validate();
        link.irs2.validate();
        link.directions = target_directions(link);
        link.column_element.resize(link.directions.size());
        for (size_t i = 0; i < link.directions.size(); ++i)
            link.column_element[i] = int(i);
        link.validate();
        return link;
    }

    LinkGeometry group_by_surface(const LinkGeometry &link, int rs_h, int rs_w)
    {
        if (rs_h < 1 || rs_w < 1 || link.irs2.n_h % rs_h != 0 || link.irs2.n_w % rs_w != 0)
            throw Error("group_by_surface: reflecting-surface shape must tile IRS2");
        if (link.group_size() != 1)
            throw Error("group_by_surface: link is already grouped");
        LinkGeometry out = link;
        out.group_h = rs_h;
        out.group_w = rs_w;
        out.directions.clear();
        out.column_element.clear();
        int nh = link.irs2.n_h / rs_h, nw = link.irs2.n_w / rs_w;
        for (int R = 0; R < nh; ++R)
            for (int C = 0; C < nw; ++C)
                for (int r = 0; r < rs_h; ++r)
                    for (int c = 0; c < rs_w; ++c)
                    {
                        int e = (R * rs_h + r) * link.irs2.n_w + C * rs_w + c;
                        out.directions.push_back(link.directions[e]);
                        out.column_element.push_back(link.column_element[e]);
                    }
        return out;
    }

    double beamwidth_rad(const ArrayConfig &irs1)
    {
        double deg = 50.0 * irs1.wavelength() / irs1.aperture();
        return deg * kPi / 180.0;
    }

    std::vector<RuleCheck> validate_design(const LinkGeometry &link, int modulation_order)
    {
        const ArrayConfig &a = link.irs1;
        double lambda = a.wavelength();
        double L = a.aperture();
        double theta = beamwidth_rad(a);
        double footprint = link.distance * theta;
        std::vector<RuleCheck> out;

        RuleCheck r1{1, "grating lobes", false, false, a.spacing, lambda / 2.0, ""};
        r1.passed = a.spacing <= lambda / 2.0 * (1.0 + 1e-12);
        r1.note = "IRS1 element spacing against half a wavelength";
        out.push_back(r1);

        RuleCheck r2{2, "far field", false, false, link.distance, 2.0 * L * L / lambda, ""};
        r2.passed = link.distance > r2.threshold;
        r2.note = "link distance against 2 L^2 / lambda";
        out.push_back(r2);

        RuleCheck r3{3, "beam footprint", false, false, link.irs2.spacing, footprint, ""};
        r3.passed = link.element_width < footprint && link.irs2.spacing > footprint;
        std::ostringstream n3;
        n3 << "need element width " << link.element_width << " m < D*theta_BW and IRS2 spacing "
           << link.irs2.spacing << " m > D*theta_BW; footprint evaluated at the configured carrier"
           << " (a lower band-edge frequency widens it)";
        r3.note = n3.str();
        out.push_back(r3);

        RuleCheck r4{4, "aperture and beamwidth", true, true, L, theta * 180.0 / kPi, ""};
        r4.note = "measured = IRS1 aperture [m], threshold = beamwidth [deg]";
        out.push_back(r4);

        int n2 = link.irs2.size();
        int bits = 0;
        while ((2 << bits) <= n2)
            ++bits;
        int mbits = 0;
        while ((1 << mbits) < modulation_order)
            ++mbits;
        RuleCheck r5{5, "index capacity", true, true, double(n2), double(mbits + bits), ""};
        r5.note = "measured = IRS2 element count, threshold = bpcu with one active beam";
        out.push_back(r5);
        return out;
    }

    bool hard_rules_pass(const std::vector<RuleCheck> &checks)
    {
        for (const auto &c : checks)
            if (!c.informational && !c.passed)
                return false;
        return true;
    }
}
