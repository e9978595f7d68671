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

#include "irsbim/common.hpp"

#ifndef IRSBIM_VERSION
#define IRSBIM_VERSION "0.0.0"
#endif

namespace irsbim
{
    std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t c)
    {
        std::uint64_t s = splitmix64(master);
        s = splitmix64(s ^ splitmix64(a + 0x1234567ULL));
        s = splitmix64(s ^ splitmix64(b + 0x89ABCDEFULL));
        s = splitmix64(s ^ splitmix64(c + 0x5555AAAAULL));
        return s;
    }

    CMatrix complex_normal_matrix(Eigen::Index rows, Eigen::Index cols, Rng &rng)
    {
        CMatrix g(rows, cols);
        std::normal_distribution<double> n(0.0, 0.7071067811865476);
        for (Eigen::Index c = 0; c < cols; ++c)
            for (Eigen::Index r = 0; r < rows; ++r)
            {
                double re = n(rng);
                double im = n(rng);
                g(r, c) = {re, im};
            }
        return g;
    }

    std::uint64_t fnv1a64(const std::string &data)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char ch : data)
        {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    std::string version_string()
    {
        return IRSBIM_VERSION;
    }
}
