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

#include "irsbim/beampattern.hpp"
#include "irsbim/geometry.hpp"
#include "irsbim/mapping.hpp"

#include <doctest.h>

#include <cmath>

namespace irsbim::testing
{
    // 100x100 IRS1 at 2.5 mm, 60 GHz; 8x8 IRS2 at 0.6 m, D = 30 m, d_w = 0.1 m
    inline geometry::LinkGeometry paper_link()
    {
        geometry::ArrayConfig a;
        a.n_h = 100;
        a.n_w = 100;
        a.spacing = 2.5e-3;
        a.carrier_freq = 60e9;
        return geometry::make_link(a, 8, 8, 0.6, 30.0, 0.1);
    }

    // Small IRS2 on the same IRS1, for exhaustive checks
    inline geometry::LinkGeometry small_link(int n_h, int n_w)
    {
        geometry::ArrayConfig a;
        a.n_h = 100;
        a.n_w = 100;
        return geometry::make_link(a, n_h, n_w, 0.6, 30.0, 0.1);
    }

    inline mapping::SchemeConfig scheme(mapping::Scheme s, int n2, int n_t, int n3, int order,
                                        mapping::Family f = mapping::Family::qam)
    {
        mapping::SchemeConfig c;
        c.scheme = s;
        c.n2 = n2;
        c.n_t = n_t;
        c.n3 = n3;
        c.constellation = mapping::Constellation::make(f, order);
        return c;
    }

    inline CMatrix random_matrix(int r, int c, Rng &rng)
    {
        return complex_normal_matrix(r, c, rng);
    }

    inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0)
    {
        return std::fabs(a - b) <= std::max(rel * std::max(std::fabs(a), std::fabs(b)), abs_floor);
    }
}
