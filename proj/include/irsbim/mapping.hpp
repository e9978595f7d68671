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

#include <cstdint>
#include <string>
#include <vector>

namespace irsbim::mapping
{
    enum class Scheme
    {
        S1,
        S2,
        S3
    };

    enum class Family
    {
        qam,
        psk
    };

    std::string to_string(Scheme s);
    Scheme scheme_from_string(const std::string &s);
    Family family_from_string(const std::string &s);

    // Gray-labelled constellation with unit average energy.
    // points[l] is the point carrying the bit label l (MSB first).
    // QAM with an odd number of bits uses a rectangular grid (2^ceil(b/2) x 2^floor(b/2)).
    class Constellation
    {
    public:
        Constellation() = default;
        static Constellation make(Family family, int order);

        int order() const { return int(points_.size()); }
        int bits_per_symbol() const { return bits_; }
        Family family() const { return family_; }
        const std::vector<cplx> &points() const { return points_; }
        cplx point(int label) const { return points_.at(size_t(label)); }
        double average_energy() const;

    private:
        Family family_ = Family::qam;
        int bits_ = 0;
        std::vector<cplx> points_;
    };

    struct SchemeConfig
    {
        Scheme scheme = Scheme::S1;
        int n2 = 64; // index count: IRS2 elements (S1, S2) or reflecting surfaces (S3)
        int n_t = 1; // active beams
        int n3 = 1;  // elements per reflecting surface
        Constellation constellation = Constellation::make(Family::qam, 16);

        std::uint64_t combinations() const; // C(n2, n_t)
        int index_bits() const;             // floor(log2 C(n2, n_t))
        std::uint64_t usable_sets() const;  // 2^index_bits
        void validate() const;
    };

    struct Codeword
    {
        std::vector<int> index_set;
        int symbol_idx = 0;
        Bits bits;
    };

    // Exact binomial; throws on 64-bit overflow
    std::uint64_t binomial_u64(int n, int k);

    // Colexicographic combinadic
    std::vector<int> colex_unrank(std::uint64_t rank, int k);
    std::uint64_t colex_rank(const std::vector<int> &set);

    int bpcu(const SchemeConfig &cfg);

    Codeword encode(const Bits &bits, const SchemeConfig &cfg);
    Bits decode(const Codeword &cw, const SchemeConfig &cfg);

    // Bit label of (symbol, combinadic rank) without building a codeword
    Bits label_bits(int symbol_idx, std::uint64_t rank, const SchemeConfig &cfg);

    int hamming_distance(const Bits &a, const Bits &b);

    std::uint64_t bits_to_uint(const Bits &bits, size_t begin, size_t count);
    void uint_to_bits(std::uint64_t v, int count, Bits &out);

    inline int gray_encode(int b) { return b ^ (b >> 1); }
    int gray_decode(int g);
}
