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
#include "irsbim/mapping.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace irsbim::beampattern
{
    enum class PatternMode
    {
        physical,
        ideal
    };

    std::string to_string(PatternMode m);
    PatternMode mode_from_string(const std::string &s);

    struct BeamVector
    {
        CVector amplitudes;
        std::vector<int> target_set;
    };

    // Normalized array factor (1/N1) sum_m exp(j (2 pi f P_m.u / c - psi_m)), direct summation
    cplx array_response(const geometry::ArrayConfig &cfg, const RVector &phases, const geometry::Direction &dir);

    // Gain at `eval` of the array steered towards `steer`. Same value as array_response with
    // steering_phases(cfg, steer), computed as a product of row and column sums.
    cplx steered_gain(const geometry::ArrayConfig &cfg, const geometry::Direction &steer, const geometry::Direction &eval);

    // Columns covered by target t (one column, or a contiguous reflecting surface when grouped)
    std::vector<int> target_columns(const geometry::LinkGeometry &link, int target);

    BeamVector beam_vector(const geometry::LinkGeometry &link, const std::vector<int> &index_set, PatternMode mode);

    // Hypothesis bank. Pattern p has index-set rank p / M and symbol label p % M.
    struct PatternBank
    {
        mapping::SchemeConfig scheme;
        PatternMode mode = PatternMode::physical;
        std::vector<std::vector<int>> index_sets; // by combinadic rank
        CMatrix target_beams;                     // columns x targets, one beam per single target
        CMatrix set_beams;                        // columns x sets, sum of the target beams in each set
        std::vector<cplx> symbols;

        int order() const { return int(symbols.size()); }
        int num_sets() const { return int(index_sets.size()); }
        int omega() const { return num_sets() * order(); }
        int columns() const { return int(set_beams.rows()); }
        int set_of(int p) const { return p / order(); }
        int symbol_of(int p) const { return p % order(); }
        int pattern_id(int set, int symbol) const { return set * order() + symbol; }
        CVector pattern(int p) const;
        Bits bits_of(int p) const;
        double average_energy() const; // mean ||Pi||^2 over the bank
    };

    PatternBank build_bank(const geometry::LinkGeometry &link, const mapping::SchemeConfig &scheme, PatternMode mode,
                           std::uint64_t cap = std::uint64_t(1) << 20);

    // CSV with header pattern_id,element,re,im
    void write_bank_csv(const PatternBank &bank, std::ostream &os);
}
