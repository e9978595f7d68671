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

#include "irsbim/beampattern.hpp"

#include <cmath>
#include <iomanip>

namespace irsbim::beampattern
{
    using geometry::ArrayConfig;
    using geometry::Direction;
    using geometry::LinkGeometry;

    std::string to_string(PatternMode m)
    {
        return m == PatternMode::ideal ? "ideal" : "physical";
    }

    PatternMode mode_from_string(const std::string &s)
    {
        if (s == "ideal")
            return PatternMode::ideal;
        if (s == "physical")
            return PatternMode::physical;
        throw Error("unknown pattern mode '" + s + "' (expected physical or ideal)");
    }

    cplx array_response(const ArrayConfig &cfg, const RVector &phases, const Direction &dir)
    {
        auto pos = geometry::element_positions(cfg);
        if (phases.size() != Eigen::Index(pos.size()))
            throw Error("array_response: phase vector length must equal the element count");
        Vec3 u = geometry::unit_direction(cfg, dir);
        double k = 2.0 * kPi * cfg.carrier_freq / geometry::kSpeedOfLight;
        cplx acc = 0.0;
        for (size_t m = 0; m < pos.size(); ++m)
            acc += std::polar(1.0, k * pos[m].dot(u) - phases[Eigen::Index(m)]);
        return acc / double(pos.size());
    }

    namespace
    {
        // sum_{i<n} exp(j x (i - (n-1)/2)), real by symmetry
        double centered_sum(int n, double x)
        {
            double s = 0.0, i0 = 0.5 * (n - 1);
            for (int i = 0; i < n; ++i)
                s += std::cos(x * (i - i0));
            return s;
        }
    }

    cplx steered_gain(const ArrayConfig &cfg, const Direction &steer, const Direction &eval)
    {
        Vec3 du = geometry::unit_direction(cfg, eval) - geometry::unit_direction(cfg, steer);
        double k = 2.0 * kPi * cfg.carrier_freq / geometry::kSpeedOfLight;
        double sh = centered_sum(cfg.n_h, k * cfg.spacing * cfg.axis_h.dot(du));
        double sw = centered_sum(cfg.n_w, k * cfg.spacing * cfg.axis_w.dot(du));
        return std::polar(sh * sw / double(cfg.size()), k * cfg.center.dot(du));
    }

    std::vector<int> target_columns(const LinkGeometry &link, int target)
    {
        int g = link.group_size();
        if (target < 0 || (target + 1) * g > link.columns())
            throw Error("target index out of range");
        std::vector<int> cols(static_cast<size_t>(g));
        for (int i = 0; i < g; ++i)
            cols[size_t(i)] = target * g + i;
        return cols;
    }

    BeamVector beam_vector(const LinkGeometry &link, const std::vector<int> &index_set, PatternMode mode)
    {
        int n = link.columns();
        BeamVector bv;
        bv.target_set = index_set;
        bv.amplitudes = CVector::Zero(n);
        for (int t : index_set)
            for (int e : target_columns(link, t))
            {
                if (mode == PatternMode::ideal)
                {
                    bv.amplitudes[e] += 1.0;
                    continue;
                }
                // one IRS1 beam per covered IRS2 element
                for (int m = 0; m < n; ++m)
                    bv.amplitudes[m] += steered_gain(link.irs1, link.directions[size_t(e)], link.directions[size_t(m)]);
            }
        return bv;
    }

    CVector PatternBank::pattern(int p) const
    {
        if (p < 0 || p >= omega())
            throw Error("pattern id out of range");
        return set_beams.col(set_of(p)) * symbols[size_t(symbol_of(p))];
    }

    Bits PatternBank::bits_of(int p) const
    {
        return mapping::label_bits(symbol_of(p), std::uint64_t(set_of(p)), scheme);
    }

    double PatternBank::average_energy() const
    {
        double es = 0.0;
        for (const auto &s : symbols)
            es += std::norm(s);
        es /= double(symbols.size());
        double eb = set_beams.colwise().squaredNorm().mean();
        return es * eb;
    }

    PatternBank build_bank(const LinkGeometry &link, const mapping::SchemeConfig &scheme, PatternMode mode,
                           std::uint64_t cap)
    {
        scheme.validate();
        if (link.group_size() != scheme.n3)
            throw Error("build_bank: geometry grouping does not match n3");
        if (link.columns() != scheme.n2 * scheme.n3)
            throw Error("build_bank: geometry has " + std::to_string(link.columns()) + " columns, scheme needs " +
                        std::to_string(scheme.n2 * scheme.n3));
        std::uint64_t sets = scheme.usable_sets();
        std::uint64_t omega = sets * std::uint64_t(scheme.constellation.order());
        if (omega > cap)
            throw Error("build_bank: pattern count " + std::to_string(omega) + " exceeds the cap of " +
                        std::to_string(cap) + "; reduce n2/n_t or use a bound with pair subsampling");

        PatternBank bank;
        bank.scheme = scheme;
        bank.mode = mode;
        bank.symbols = scheme.constellation.points();
        int n = link.columns();
        bank.target_beams.resize(n, scheme.n2);
        for (int t = 0; t < scheme.n2; ++t)
            bank.target_beams.col(t) = beam_vector(link, {t}, mode).amplitudes;
        bank.index_sets.reserve(size_t(sets));
        bank.set_beams.resize(n, Eigen::Index(sets));
        for (std::uint64_t r = 0; r < sets; ++r)
        {
            auto set = mapping::colex_unrank(r, scheme.n_t);
            CVector b = CVector::Zero(n);
            for (int t : set)
                b += bank.target_beams.col(t);
            bank.set_beams.col(Eigen::Index(r)) = b;
            bank.index_sets.push_back(std::move(set));
        }
        return bank;
    }

    void write_bank_csv(const PatternBank &bank, std::ostream &os)
    {
        os << "pattern_id,element,re,im\n";
        os << std::setprecision(17);
        for (int p = 0; p < bank.omega(); ++p)
        {
            CVector v = bank.pattern(p);
            for (Eigen::Index e = 0; e < v.size(); ++e)
                os << p << ',' << e << ',' << v[e].real() << ',' << v[e].imag() << '\n';
        }
    }
}
