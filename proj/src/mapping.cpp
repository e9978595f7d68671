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

#include "irsbim/mapping.hpp"

#include <algorithm>
#include <cmath>

namespace irsbim::mapping
{
    std::string to_string(Scheme s)
    {
        switch (s)
        {
        case Scheme::S1:
            return "S1";
        case Scheme::S2:
            return "S2";
        default:
            return "S3";
        }
    }

    Scheme scheme_from_string(const std::string &s)
    {
        if (s == "S1")
            return Scheme::S1;
        if (s == "S2")
            return Scheme::S2;
        if (s == "S3")
            return Scheme::S3;
        throw Error("unknown scheme '" + s + "' (expected S1, S2 or S3)");
    }

    Family family_from_string(const std::string &s)
    {
        if (s == "qam")
            return Family::qam;
        if (s == "psk")
            return Family::psk;
        throw Error("unknown constellation family '" + s + "' (expected qam or psk)");
    }

    int gray_decode(int g)
    {
        int b = 0;
        for (; g; g >>= 1)
            b ^= g;
        return b;
    }

    Constellation Constellation::make(Family family, int order)
    {
        if (order < 2 || (order & (order - 1)) != 0)
            throw Error("constellation order must be a power of two >= 2");
        Constellation c;
        c.family_ = family;
        int bits = 0;
        while ((1 << bits) < order)
            ++bits;
        c.bits_ = bits;
        c.points_.resize(size_t(order));

        if (family == Family::psk)
        {
            for (int l = 0; l < order; ++l)
            {
                double ang = 2.0 * kPi * gray_decode(l) / order;
                c.points_[size_t(l)] = std::polar(1.0, ang);
            }
            return c;
        }

        int bi = (bits + 1) / 2, bq = bits / 2;
        int li = 1 << bi, lq = 1 << bq;
        double energy = 0.0;
        for (int l = 0; l < order; ++l)
        {
            int gi = l >> bq, gq = l & (lq - 1);
            double re = 2.0 * gray_decode(gi) - (li - 1);
            double im = bq ? 2.0 * gray_decode(gq) - (lq - 1) : 0.0;
            c.points_[size_t(l)] = {re, im};
            energy += re * re + im * im;
        }
        double scale = std::sqrt(order / energy);
        for (auto &p : c.points_)
            p *= scale;
        return c;
    }

    double Constellation::average_energy() const
    {
        double e = 0.0;
        for (const auto &p : points_)
            e += std::norm(p);
        return points_.empty() ? 0.0 : e / double(points_.size());
    }

    std::uint64_t binomial_u64(int n, int k)
    {
        if (k < 0 || n < 0 || k > n)
            return 0;
        k = std::min(k, n - k);
        unsigned __int128 r = 1;
        for (int i = 1; i <= k; ++i)
        {
            r = r * unsigned(n - k + i) / unsigned(i);
            if (r > std::uint64_t(-1))
                throw Error("binomial coefficient exceeds 64 bits");
        }
        return std::uint64_t(r);
    }

    std::uint64_t SchemeConfig::combinations() const
    {
        return binomial_u64(n2, n_t);
    }

    int SchemeConfig::index_bits() const
    {
        std::uint64_t c = combinations();
        int b = 0;
        while (b < 63 && (std::uint64_t(2) << b) <= c)
            ++b;
        return c >= 2 ? b : 0;
    }

    std::uint64_t SchemeConfig::usable_sets() const
    {
        return std::uint64_t(1) << index_bits();
    }

    void SchemeConfig::validate() const
    {
        if (n2 < 1)
            throw Error("SchemeConfig: n2 must be >= 1");
        if (n_t < 1 || n_t > n2)
            throw Error("SchemeConfig: need 1 <= n_t <= n2");
        if (scheme != Scheme::S2 && n_t != 1)
            throw Error("SchemeConfig: n_t must be 1 for S1 and S3");
        if (scheme != Scheme::S3 && n3 != 1)
            throw Error("SchemeConfig: n3 must be 1 for S1 and S2");
        if (n3 < 1)
            throw Error("SchemeConfig: n3 must be >= 1");
        if (constellation.order() < 2)
            throw Error("SchemeConfig: constellation not initialised");
        if (index_bits() > 62)
            throw Error("SchemeConfig: too many index bits");
    }

    std::vector<int> colex_unrank(std::uint64_t rank, int k)
    {
        std::vector<int> set(size_t(std::max(k, 0)));
        for (int i = k; i >= 1; --i)
        {
            // largest c with C(c, i) <= rank
            int c = i - 1;
            while (binomial_u64(c + 1, i) <= rank)
                ++c;
            set[size_t(i - 1)] = c;
            rank -= binomial_u64(c, i);
        }
        return set;
    }

    std::uint64_t colex_rank(const std::vector<int> &set)
    {
        std::uint64_t r = 0;
        for (size_t i = 0; i < set.size(); ++i)
            r += binomial_u64(set[i], int(i) + 1);
        return r;
    }

    int bpcu(const SchemeConfig &cfg)
    {
        cfg.validate();
        return cfg.constellation.bits_per_symbol() + cfg.index_bits();
    }

    std::uint64_t bits_to_uint(const Bits &bits, size_t begin, size_t count)
    {
        std::uint64_t v = 0;
        for (size_t i = 0; i < count; ++i)
            v = (v << 1) | (bits[begin + i] & 1u);
        return v;
    }

    void uint_to_bits(std::uint64_t v, int count, Bits &out)
    {
        for (int i = count - 1; i >= 0; --i)
            out.push_back(std::uint8_t((v >> i) & 1u));
    }

    Codeword encode(const Bits &bits, const SchemeConfig &cfg)
    {
        int nb = bpcu(cfg);
        if (int(bits.size()) != nb)
            throw Error("encode: expected " + std::to_string(nb) + " bits, got " + std::to_string(bits.size()));
        for (auto b : bits)
            if (b > 1)
                throw Error("encode: bits must be 0 or 1");
        int ms = cfg.constellation.bits_per_symbol();
        Codeword cw;
        cw.symbol_idx = int(bits_to_uint(bits, 0, size_t(ms)));
        std::uint64_t rank = bits_to_uint(bits, size_t(ms), size_t(nb - ms));
        cw.index_set = colex_unrank(rank, cfg.n_t);
        cw.bits = bits;
        return cw;
    }

    Bits label_bits(int symbol_idx, std::uint64_t rank, const SchemeConfig &cfg)
    {
        Bits out;
        uint_to_bits(std::uint64_t(symbol_idx), cfg.constellation.bits_per_symbol(), out);
        uint_to_bits(rank, cfg.index_bits(), out);
        return out;
    }

    Bits decode(const Codeword &cw, const SchemeConfig &cfg)
    {
        cfg.validate();
        if (cw.symbol_idx < 0 || cw.symbol_idx >= cfg.constellation.order())
            throw Error("decode: symbol index out of range");
        if (int(cw.index_set.size()) != cfg.n_t)
            throw Error("decode: index set has the wrong size");
        for (size_t i = 0; i < cw.index_set.size(); ++i)
        {
            if (cw.index_set[i] < 0 || cw.index_set[i] >= cfg.n2)
                throw Error("decode: index out of range");
            if (i > 0 && cw.index_set[i] <= cw.index_set[i - 1])
                throw Error("decode: index set must be strictly increasing");
        }
        std::uint64_t rank = colex_rank(cw.index_set);
        if (rank >= cfg.usable_sets())
            throw Error("decode: index set is not addressable by the index bits");
        return label_bits(cw.symbol_idx, rank, cfg);
    }

    int hamming_distance(const Bits &a, const Bits &b)
    {
        if (a.size() != b.size())
            throw Error("hamming_distance: length mismatch");
        int d = 0;
        for (size_t i = 0; i < a.size(); ++i)
            d += (a[i] != b[i]);
        return d;
    }
}
