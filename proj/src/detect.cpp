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

#include "irsbim/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace irsbim::detect
{
    using beampattern::PatternBank;

    std::string to_string(DetectorKind d)
    {
        switch (d)
        {
        case DetectorKind::ml:
            return "ml";
        case DetectorKind::cs:
            return "cs";
        default:
            return "both";
        }
    }

    DetectorKind detector_from_string(const std::string &s)
    {
        if (s == "ml")
            return DetectorKind::ml;
        if (s == "cs")
            return DetectorKind::cs;
        if (s == "both")
            return DetectorKind::both;
        throw Error("unknown detector '" + s + "' (expected ml, cs or both)");
    }

    namespace
    {
        Eigen::LLT<CMatrix> factor(const CMatrix &sigma)
        {
            Eigen::LLT<CMatrix> llt(sigma);
            if (llt.info() != Eigen::Success)
                throw Error("noise covariance is singular or not positive definite");
            return llt;
        }

        void check(const Observation &obs)
        {
            if (obs.a.rows() != obs.y.size() || obs.sigma.rows() != obs.y.size() || obs.sigma.cols() != obs.y.size())
                throw Error("observation dimensions are inconsistent");
        }

        Decision make_decision(const PatternBank &bank, int p, double metric)
        {
            Decision d;
            d.pattern_id = p;
            d.index_set = bank.index_sets[size_t(bank.set_of(p))];
            d.symbol_idx = bank.symbol_of(p);
            d.bits = bank.bits_of(p);
            d.metric_value = metric;
            return d;
        }
    }

    Whitened whiten(const Observation &obs)
    {
        check(obs);
        auto llt = factor(obs.sigma);
        Whitened w;
        w.y = llt.matrixL().solve(obs.y);
        w.a = llt.matrixL().solve(obs.a);
        return w;
    }

    double ml_metric(const Observation &obs, const CVector &pattern)
    {
        check(obs);
        if (pattern.size() != obs.a.cols())
            throw Error("ml_metric: pattern length does not match A");
        auto llt = factor(obs.sigma);
        CVector ap = obs.a * pattern;
        CVector sinv_ap = llt.solve(ap);
        return (obs.y - 0.5 * ap).dot(sinv_ap).real();
    }

    Decision ml_detect(const Observation &obs, const PatternBank &bank)
    {
        return ml_detect(whiten(obs), bank);
    }

    Decision ml_detect(const Whitened &w, const PatternBank &bank)
    {
        if (bank.omega() < 1)
            throw Error("ml_detect: empty pattern bank");
        if (w.a.cols() != bank.columns())
            throw Error("ml_detect: bank and A disagree on the column count");
        // Beams are sums of single-target beams, so A b is assembled from A b_t
        CMatrix ct = w.a * bank.target_beams;
        const int m = bank.order();
        double best = -std::numeric_limits<double>::infinity();
        int best_p = 0;
        CVector c(w.y.size());
        for (int s = 0; s < bank.num_sets(); ++s)
        {
            c.setZero();
            for (int t : bank.index_sets[size_t(s)])
                c += ct.col(t);
            cplx u = c.dot(w.y); // c^H y
            double e = c.squaredNorm();
            for (int k = 0; k < m; ++k)
            {
                const cplx &x = bank.symbols[size_t(k)];
                double metric = (std::conj(u) * x).real() - 0.5 * std::norm(x) * e;
                if (metric > best)
                {
                    best = metric;
                    best_p = s * m + k;
                }
            }
        }
        return make_decision(bank, best_p, best);
    }

    std::vector<int> omp(const CVector &y, const CMatrix &a, int sparsity)
    {
        if (sparsity < 1 || sparsity > a.cols())
            throw Error("omp: invalid sparsity");
        if (a.rows() < sparsity)
            throw Error("omp: fewer measurements than the sparsity level");
        std::vector<int> support;
        std::vector<char> used(size_t(a.cols()), 0);
        CVector r = y;
        for (int it = 0; it < sparsity; ++it)
        {
            CVector corr = a.adjoint() * r;
            int best = -1;
            double best_v = -1.0;
            for (Eigen::Index j = 0; j < corr.size(); ++j)
                if (!used[size_t(j)] && std::abs(corr[j]) > best_v)
                {
                    best_v = std::abs(corr[j]);
                    best = int(j);
                }
            used[size_t(best)] = 1;
            support.push_back(best);
            CMatrix as(a.rows(), Eigen::Index(support.size()));
            for (size_t i = 0; i < support.size(); ++i)
                as.col(Eigen::Index(i)) = a.col(support[i]);
            CVector x = as.colPivHouseholderQr().solve(y);
            r = y - as * x;
        }
        std::sort(support.begin(), support.end());
        return support;
    }

    int nearest_set(const std::vector<int> &support, const PatternBank &bank)
    {
        const int g = bank.columns() / bank.scheme.n2;
        std::vector<char> in_support(size_t(bank.columns()), 0);
        for (int c : support)
            in_support[size_t(c)] = 1;
        int best = 0;
        long best_d = std::numeric_limits<long>::max();
        for (int s = 0; s < bank.num_sets(); ++s)
        {
            // |span \ support| + |support \ span|
            long hit = 0, span = 0;
            for (int t : bank.index_sets[size_t(s)])
                for (int i = 0; i < g; ++i)
                {
                    ++span;
                    hit += in_support[size_t(t * g + i)];
                }
            long d = (span - hit) + (long(support.size()) - hit);
            if (d < best_d)
            {
                best_d = d;
                best = s;
            }
        }
        return best;
    }

    Decision cs_detect(const Observation &obs, const PatternBank &bank, int max_iter)
    {
        return cs_detect(whiten(obs), bank, max_iter);
    }

    Decision cs_detect(const Whitened &w, const PatternBank &bank, int max_iter)
    {
        if (bank.omega() < 1)
            throw Error("cs_detect: empty pattern bank");
        if (w.a.cols() != bank.columns())
            throw Error("cs_detect: bank and A disagree on the column count");
        const int n_t = bank.scheme.n_t;
        if (w.y.size() < n_t)
            throw Error("cs_detect: need at least n_t receive antennas");
        int sparsity = n_t * bank.scheme.n3;
        if (max_iter > 0)
            sparsity = std::min(sparsity, max_iter);
        sparsity = std::min<int>(sparsity, int(w.y.size()));
        auto support = omp(w.y, w.a, sparsity);
        int s = nearest_set(support, bank);

        CVector c = w.a * bank.set_beams.col(s);
        double best = std::numeric_limits<double>::infinity();
        int best_k = 0;
        for (int k = 0; k < bank.order(); ++k)
        {
            double d = (w.y - c * bank.symbols[size_t(k)]).squaredNorm();
            if (d < best)
            {
                best = d;
                best_k = k;
            }
        }
        return make_decision(bank, bank.pattern_id(s, best_k), -best);
    }
}
