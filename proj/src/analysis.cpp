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

#include "irsbim/analysis.hpp"
#include "irsbim/mapping.hpp"
#include "irsbim/specialfn.hpp"
#include "irsbim/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace irsbim::analysis
{
    using beampattern::PatternBank;
    using specialfn::q_function;

    namespace
    {
        // Clamp floating-point dust at zero, reject real negatives
        double guard_nonneg(double x, double scale, const char *what)
        {
            if (x >= 0.0)
                return x;
            if (x >= -1e-9 * std::max(1.0, scale))
                return 0.0;
            throw Error(std::string("negative ") + what + " in pairwise statistics");
        }

        double sign(double x)
        {
            return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
        }

        // Pr{r_j > r_k} as a function of s = sgn(q_r) beta2; decreasing in s
        double prob_from_score(double s, int n_r)
        {
            if (s == 0.0)
                return 0.5;
            if (s > 0.0)
                return mrc_tail(s, n_r);
            return 1.0 - mrc_tail(-s, n_r);
        }

        void check_bank(const PatternBank &bank, const CVector &theta, const CMatrix &sigma_c, double sigmaR_sq,
                        int n_r)
        {
            if (theta.size() != bank.columns() || sigma_c.rows() != bank.columns() || sigma_c.cols() != bank.columns())
                throw Error("bound: theta / sigma_c dimensions do not match the bank");
            if (!(sigmaR_sq > 0.0))
                throw Error("bound: sigmaR^2 must be positive");
            if (n_r < 1)
                throw Error("bound: n_r must be >= 1");
        }

        // g(a, b) = Pi_a^H M Pi_b with M folded into a set-level Gram matrix
        struct Gram
        {
            CMatrix b; // sets x sets
            std::vector<cplx> x;
            int m = 1;

            cplx g(int a, int c) const
            {
                return std::conj(x[size_t(a % m)]) * x[size_t(c % m)] * b(a / m, c / m);
            }
            double d(int a) const
            {
                return std::norm(x[size_t(a % m)]) * b(a / m, a / m).real();
            }
        };

        Gram make_gram(const PatternBank &bank, const CMatrix &m)
        {
            Gram gr;
            gr.b = bank.set_beams.adjoint() * m * bank.set_beams;
            gr.x = bank.symbols;
            gr.m = bank.order();
            return gr;
        }

        int label_distance(const PatternBank &bank, int a, int b)
        {
            unsigned sm = unsigned(bank.symbol_of(a) ^ bank.symbol_of(b));
            unsigned ss = unsigned(bank.set_of(a) ^ bank.set_of(b));
            return std::popcount(sm) + std::popcount(ss);
        }

        // Fréchet min over k for the ordered pair (i, j), Gram of M / (2 sigmaR^2)
        double pair_min(const Gram &gr, int omega, int i, int j, int n_r)
        {
            const double di = gr.d(i), dj = gr.d(j);
            const cplx gij = gr.g(i, j);
            double beta1 = std::max(0.0, 0.5 * (di + dj - 2.0 * gij.real()));
            double p_i = prob_ji(beta1, n_r);

            const int m = gr.m;
            const int si = i / m, sj = j / m;
            const cplx xi = std::conj(gr.x[size_t(i % m)]), xj = std::conj(gr.x[size_t(j % m)]);
            const double scale = di + dj + 1e-300;
            double best = -std::numeric_limits<double>::infinity();
            bool any = false;
            const int sets = omega / m;
            for (int sk = 0; sk < sets; ++sk)
            {
                const cplx bi = xi * gr.b(si, sk), bj = xj * gr.b(sj, sk);
                const double bkk = gr.b(sk, sk).real();
                for (int mk = 0; mk < m; ++mk)
                {
                    int k = sk * m + mk;
                    if (k == i || k == j)
                        continue;
                    const cplx xk = gr.x[size_t(mk)];
                    const cplx gik = bi * xk, gjk = bj * xk;
                    const double dk = std::norm(xk) * bkk;
                    double s1 = dj + dk - 2.0 * gjk.real();
                    if (!(s1 > 1e-14 * scale))
                        continue; // Pi_j and Pi_k coincide
                    double qr = dj - dk - 2.0 * gij.real() + 2.0 * gik.real();
                    double qi = -2.0 * gjk.imag() - 2.0 * gij.imag() + 2.0 * gik.imag();
                    double s2 = dj + dk + 4.0 * di + 2.0 * gjk.real() - 4.0 * gij.real() - 4.0 * gik.real();
                    double sk2 = std::max(0.0, s2 - (qr * qr + qi * qi) / s1);
                    double b2 = qr * qr / ((2.0 + sk2) * s1);
                    double score = qr > 0.0 ? b2 : (qr < 0.0 ? -b2 : 0.0);
                    if (score > best)
                        best = score;
                    any = true;
                }
            }
            if (!any)
                return p_i;
            return std::min(p_i, prob_from_score(best, n_r));
        }
    }

    CMatrix through_phases(const CMatrix &sigma_c, const CVector &theta)
    {
        CMatrix m = theta.conjugate().asDiagonal() * sigma_c * theta.asDiagonal();
        return 0.5 * (m + CMatrix(m.adjoint()));
    }

    PairwiseParams pairwise_params(const CVector &pi, const CVector &pj, const CVector &pk, const CMatrix &m,
                                   double sigmaR_sq)
    {
        if (!(sigmaR_sq > 0.0))
            throw Error("pairwise_params: sigmaR^2 must be positive");
        PairwiseParams p;
        CVector dij = pi - pj;
        CVector d1 = pj - pk;
        CVector d2 = pj + pk - 2.0 * pi;
        double scale = (pi.squaredNorm() + pj.squaredNorm() + pk.squaredNorm()) * m.norm() / (2.0 * sigmaR_sq);
        p.beta1 = guard_nonneg(dij.dot(m * dij).real() / (4.0 * sigmaR_sq), scale, "beta1");
        p.sigma_z1_sq = guard_nonneg(d1.dot(m * d1).real() / (2.0 * sigmaR_sq), scale, "sigma_z1^2");
        p.sigma_z2_sq = guard_nonneg(d2.dot(m * d2).real() / (2.0 * sigmaR_sq), scale, "sigma_z2^2");
        p.q = d2.dot(m * d1) / (2.0 * sigmaR_sq);
        p.q_r = p.q.real();
        if (p.sigma_z1_sq == 0.0)
        {
            if (d1.squaredNorm() == 0.0)
                throw Error("pairwise_params: patterns j and k are identical");
            // distinct patterns that the channel cannot separate
            p.sigma_kappa_sq = p.sigma_z2_sq;
            return p;
        }
        p.sigma_kappa_sq = guard_nonneg(p.sigma_z2_sq - std::norm(p.q) / p.sigma_z1_sq, scale, "sigma_kappa^2");
        if (p.q_r != 0.0)
        {
            p.v = 1.0 + p.sigma_kappa_sq * p.sigma_z1_sq / (p.q_r * p.q_r);
            p.beta2 = p.q_r * p.q_r / ((2.0 + p.sigma_kappa_sq) * p.sigma_z1_sq);
        }
        return p;
    }

    PairwiseParams pairwise_params(const PatternBank &bank, int i, int j, int k, const CVector &theta,
                                   const CMatrix &sigma_c, double sigmaR_sq, int n_r)
    {
        check_bank(bank, theta, sigma_c, sigmaR_sq, n_r);
        if (i == j)
            throw Error("pairwise_params: i and j must differ");
        CMatrix m = through_phases(sigma_c, theta);
        return pairwise_params(bank.pattern(i), bank.pattern(j), bank.pattern(k), m, sigmaR_sq);
    }

    double mrc_tail(double beta, int n_r)
    {
        if (n_r < 1)
            throw Error("n_r must be >= 1");
        if (!(beta >= 0.0))
            throw Error("beta must be >= 0");
        if (beta == 0.0)
            return 0.5;
        if (std::isinf(beta))
            return 0.0;
        double mu = std::sqrt(beta / (1.0 + beta));
        double x = 1.0 / (4.0 * (1.0 + beta));
        double term = 1.0, sum = 0.0;
        for (int n = 0; n < n_r; ++n)
        {
            sum += term;
            term *= 2.0 * (2.0 * n + 1.0) / (n + 1.0) * x; // C(2n+2, n+1) / C(2n, n)
        }
        return std::clamp(0.5 * (1.0 - mu * sum), 0.0, 0.5);
    }

    double prob_ji(double beta1, int n_r)
    {
        return mrc_tail(beta1, n_r);
    }

    double prob_jk(const PairwiseParams &p, int n_r)
    {
        if (n_r < 1)
            throw Error("n_r must be >= 1");
        if (p.q_r == 0.0)
            return 0.5;
        double b = p.beta2;
        double mu = std::sqrt(b / (1.0 + b));
        double sum = 0.0;
        for (int n = 0; n < n_r; ++n)
            sum += specialfn::binomial(2 * n, n) * std::pow(1.0 / (4.0 * (1.0 + b)), n);
        return std::clamp(0.5 * (1.0 - sign(p.q_r) * mu * sum), 0.0, 1.0);
    }

    double prob_jk_pochhammer(const PairwiseParams &p, int n_r)
    {
        if (n_r < 1)
            throw Error("n_r must be >= 1");
        if (p.q_r == 0.0)
            return 0.5;
        // w = sigma_k^2 / (2 (v - 1) + v sigma_k^2), written to stay finite as sigma_k^2 -> 0
        double w = 1.0 / (p.v + 2.0 * p.sigma_z1_sq / (p.q_r * p.q_r));
        double sum = 0.0;
        for (int n = 0; n < n_r; ++n)
            sum += specialfn::pochhammer(0.5, n) / std::tgamma(n + 1.0) * std::pow(1.0 - w, n);
        return std::clamp(0.5 - 0.5 * sign(p.q_r) * std::sqrt(w) * sum, 0.0, 1.0);
    }

    double pairwise_bound(const PatternBank &bank, int i, int j, const CVector &theta, const CMatrix &sigma_c,
                          double sigmaR_sq, int n_r)
    {
        check_bank(bank, theta, sigma_c, sigmaR_sq, n_r);
        if (i == j || i < 0 || j < 0 || i >= bank.omega() || j >= bank.omega())
            throw Error("pairwise_bound: invalid pattern pair");
        Gram gr = make_gram(bank, through_phases(sigma_c, theta) / (2.0 * sigmaR_sq));
        return pair_min(gr, bank.omega(), i, j, n_r);
    }

    BoundResult average_ber_bound(const PatternBank &bank, const CVector &theta, const CMatrix &sigma_c,
                                  double sigmaR_sq, int n_r, std::uint64_t pair_budget, std::uint64_t seed,
                                  bool keep_per_pair, std::uint64_t sample_pairs)
    {
        check_bank(bank, theta, sigma_c, sigmaR_sq, n_r);
        const int omega = bank.omega();
        if (omega < 2)
            throw Error("average_ber_bound: need at least two patterns");
        BoundResult res;
        res.omega = omega;
        res.n_b = mapping::bpcu(bank.scheme);
        res.method = "closed_form";
        Gram gr = make_gram(bank, through_phases(sigma_c, theta) / (2.0 * sigmaR_sq));
        const double w0 = 1.0 / (double(res.n_b) * omega);
        const std::uint64_t pairs = std::uint64_t(omega) * std::uint64_t(omega - 1);

        if (pairs <= pair_budget)
        {
            if (keep_per_pair)
                res.per_pair = Eigen::MatrixXd::Zero(omega, omega);
            double sum = 0.0;
            for (int i = 0; i < omega; ++i)
                for (int j = 0; j < omega; ++j)
                {
                    if (i == j)
                        continue;
                    double p = pair_min(gr, omega, i, j, n_r);
                    if (keep_per_pair)
                        (*res.per_pair)(i, j) = p;
                    sum += label_distance(bank, i, j) * p;
                }
            res.raw = sum * w0;
            res.pairs_evaluated = pairs;
            res.exact = true;
        }
        else
        {
            // uniform ordered pairs, scaled to the full double sum
            Rng rng(derive_seed(seed, 0xB0B));
            std::uniform_int_distribution<int> pick(0, omega - 1);
            std::uint64_t n = std::max<std::uint64_t>(sample_pairs, 2);
            double s = 0.0, s2 = 0.0;
            for (std::uint64_t t = 0; t < n; ++t)
            {
                int i = pick(rng);
                int j = pick(rng);
                while (j == i)
                    j = pick(rng);
                double v = label_distance(bank, i, j) * pair_min(gr, omega, i, j, n_r) * w0 * double(pairs);
                s += v;
                s2 += v * v;
            }
            double mean = s / double(n);
            double var = std::max(0.0, (s2 - double(n) * mean * mean) / double(n - 1));
            res.raw = mean;
            res.std_error = std::sqrt(var / double(n));
            res.pairs_evaluated = n;
            res.exact = false;
        }
        res.ber_upper = std::clamp(res.raw, 0.0, 1.0);
        return res;
    }

    double conditional_prob(const CMatrix &a, const CMatrix &sigma, const PatternBank &bank, int i, int j, int k)
    {
        if (a.cols() != bank.columns() || sigma.rows() != a.rows())
            throw Error("conditional_prob: dimension mismatch");
        Eigen::LLT<CMatrix> llt(sigma);
        if (llt.info() != Eigen::Success)
            throw Error("conditional_prob: noise covariance is not positive definite");
        auto gamma = [&](int x, int y)
        {
            CVector d = llt.matrixL().solve(a * (bank.pattern(x) - bank.pattern(y)));
            return 0.5 * d.squaredNorm();
        };
        double gij = gamma(i, j);
        if (k == i)
            return q_function(std::sqrt(gij));
        double gkj = gamma(k, j);
        if (!(gkj > 0.0))
            throw Error("conditional_prob: patterns j and k are indistinguishable");
        double kappa = (gij - gamma(i, k)) / std::sqrt(gkj);
        return q_function(kappa);
    }

    BoundResult sampled_bound_s3(const channel::ChannelParams &params, snr_opt::Method method,
                                 const snr_opt::Options &opts, const PatternBank &bank, int n_samples, Rng &rng,
                                 std::uint64_t pair_budget, std::uint64_t sample_pairs)
    {
        if (n_samples < 100)
            throw Error("sampled_bound_s3: need at least 100 channel samples");
        params.validate();
        if (params.n_cols != bank.columns())
            throw Error("sampled_bound_s3: channel and bank disagree on the column count");
        const int omega = bank.omega();
        const int m = bank.order();
        const int sets = bank.num_sets();
        const int n2 = bank.scheme.n2, n3 = bank.scheme.n3;
        BoundResult res;
        res.omega = omega;
        res.n_b = mapping::bpcu(bank.scheme);
        res.method = "sampled";

        // per-draw set-level Gram of the whitened effective matrix, halved
        CMatrix los = channel::los_matrix(params.n_r, params.n_cols, params.los_seed);
        std::vector<CMatrix> grams;
        grams.reserve(size_t(n_samples));
        for (int s = 0; s < n_samples; ++s)
        {
            CMatrix h = channel::sample_h(params, los, rng);
            CVector theta = snr_opt::optimize_surfaces(h, n2, n3, method, bank.target_beams, opts);
            CMatrix a = h * theta.asDiagonal();
            CMatrix sigma = channel::noise_cov(h, params.sigma2_sq, params.sigmaR_sq);
            Eigen::LLT<CMatrix> llt(sigma);
            CMatrix c = llt.matrixL().solve(a * bank.set_beams);
            grams.push_back(0.5 * c.adjoint() * c);
        }
        auto gam = [&](const CMatrix &b, int x, int y)
        {
            cplx sx = bank.symbols[size_t(x % m)], sy = bank.symbols[size_t(y % m)];
            double dx = std::norm(sx) * b(x / m, x / m).real();
            double dy = std::norm(sy) * b(y / m, y / m).real();
            cplx gxy = std::conj(sx) * sy * b(x / m, y / m);
            return std::max(0.0, dx + dy - 2.0 * gxy.real());
        };
        auto cond = [&](const CMatrix &b, int i, int j, int k)
        {
            double gij = gam(b, i, j);
            if (k == i)
                return q_function(std::sqrt(gij));
            double gkj = gam(b, k, j);
            if (!(gkj > 0.0))
                return 0.5;
            return q_function((gij - gam(b, i, k)) / std::sqrt(gkj));
        };

        const double w0 = 1.0 / (double(res.n_b) * omega);
        const std::uint64_t all_pairs = std::uint64_t(omega) * std::uint64_t(omega - 1);
        std::vector<std::pair<int, int>> pairs;
        double pair_scale = 1.0;
        if (all_pairs <= pair_budget)
        {
            for (int i = 0; i < omega; ++i)
                for (int j = 0; j < omega; ++j)
                    if (i != j)
                        pairs.emplace_back(i, j);
        }
        else
        {
            std::uniform_int_distribution<int> pick(0, omega - 1);
            for (std::uint64_t t = 0; t < sample_pairs; ++t)
            {
                int i = pick(rng);
                int j = pick(rng);
                while (j == i)
                    j = pick(rng);
                pairs.emplace_back(i, j);
            }
            pair_scale = double(all_pairs) / double(sample_pairs);
            res.exact = false;
        }

        std::vector<double> per_sample(size_t(n_samples), 0.0);
        std::vector<double> pair_vals;
        pair_vals.reserve(pairs.size());
        (void)sets;
        for (const auto &[i, j] : pairs)
        {
            int nu = label_distance(bank, i, j);
            if (nu == 0)
                continue;
            double best = 2.0;
            int best_k = i;
            for (int k = 0; k < omega; ++k)
            {
                if (k == j)
                    continue;
                double acc = 0.0;
                for (int s = 0; s < n_samples; ++s)
                    acc += cond(grams[size_t(s)], i, j, k);
                acc /= n_samples;
                if (acc < best)
                {
                    best = acc;
                    best_k = k;
                }
            }
            double wv = nu * w0 * pair_scale;
            pair_vals.push_back(wv * best);
            for (int s = 0; s < n_samples; ++s)
                per_sample[size_t(s)] += wv * cond(grams[size_t(s)], i, j, best_k);
        }
        res.raw = stats::mean(per_sample);
        double var = stats::variance(per_sample) / n_samples;
        if (!res.exact && pair_vals.size() > 1)
        {
            // pair-sampling spread, pairs with nu = 0 contribute zeros
            std::vector<double> pv = pair_vals;
            pv.resize(pairs.size(), 0.0);
            var += stats::variance(pv) * double(pv.size());
        }
        res.std_error = std::sqrt(var);
        res.pairs_evaluated = pairs.size();
        res.ber_upper = std::clamp(res.raw, 0.0, 1.0);
        return res;
    }

    GammaLawResult gamma_law_check(const PatternBank &bank, int i, int j, const CVector &theta,
                                   const channel::ChannelParams &params, int n_draws, Rng &rng)
    {
        params.validate();
        if (params.n_cols != bank.columns() || theta.size() != bank.columns())
            throw Error("gamma_law_check: dimension mismatch");
        GammaLawResult r;
        CVector delta = bank.pattern(i) - bank.pattern(j);
        CMatrix m = through_phases(channel::effective_covariance(params), theta);
        double quad = delta.dot(m * delta).real();
        if (!(quad > 0.0))
            throw Error("gamma_law_check: patterns are indistinguishable");
        r.rate = 2.0 * params.sigmaR_sq / quad;
        CMatrix los = channel::los_matrix(params.n_r, params.n_cols, params.los_seed);
        CVector td = theta.cwiseProduct(delta);
        r.samples.reserve(size_t(n_draws));
        for (int t = 0; t < n_draws; ++t)
        {
            CMatrix h = channel::sample_h(params, los, rng);
            CMatrix sigma = channel::noise_cov(h, params.sigma2_sq, params.sigmaR_sq);
            Eigen::LLT<CMatrix> llt(sigma);
            CVector z = llt.matrixL().solve(h * td);
            r.samples.push_back(0.5 * z.squaredNorm());
        }
        double shape = params.n_r, rate = r.rate;
        auto res = stats::ks_one_sample(r.samples, [&](double x) { return stats::gamma_cdf(x, shape, rate); });
        r.statistic = res.statistic;
        r.p_value = res.p_value;
        r.sample_mean = stats::mean(r.samples);
        double threshold = params.k_factor == 0.0 ? 0.01 : 1e-4;
        r.passed = r.p_value > threshold;
        return r;
    }

    double kappa_pdf(double kappa, const PairwiseParams &p, int n_r)
    {
        if (p.q_r == 0.0)
            throw Error("kappa_pdf: q_r = 0, kappa is Gaussian in that case");
        if (!(p.sigma_kappa_sq > 0.0) || !(p.v > 1.0))
            throw Error("kappa_pdf: degenerate parameters");
        const double sk = p.sigma_kappa_sq, v = p.v;
        double arg = -sign(p.q_r) * std::sqrt(2.0 / (v * sk)) * kappa;
        if (arg > 50.0)
            return 0.0; // below 1e-300
        if (arg < -50.0)
            throw Error("kappa_pdf: argument outside the supported range");
        double log_pref = std::log(2.0) + specialfn::log_gamma(2.0 * n_r) - specialfn::log_gamma(n_r) -
                          0.5 * std::log(kPi * sk) + n_r * std::log((v - 1.0) / (2.0 * v)) -
                          (2.0 * v - 1.0) / (2.0 * v * sk) * kappa * kappa;
        return std::exp(log_pref) * specialfn::pcf_d(-2.0 * n_r, arg);
    }

    double sample_kappa(const PairwiseParams &p, int n_r, Rng &rng)
    {
        if (!(p.sigma_z1_sq > 0.0))
            throw Error("sample_kappa: sigma_z1^2 must be positive");
        // z2 = c z1 + e with E[z1 conj(z2)] = q
        cplx c = std::conj(p.q) / p.sigma_z1_sq;
        double se = std::sqrt(std::max(0.0, p.sigma_z2_sq - std::norm(p.q) / p.sigma_z1_sq));
        double s1 = std::sqrt(p.sigma_z1_sq);
        cplx num = 0.0;
        double nz = 0.0;
        for (int n = 0; n < n_r; ++n)
        {
            cplx z1 = s1 * complex_normal(rng);
            cplx z2 = c * z1 + se * complex_normal(rng);
            num += std::conj(z1) * z2;
            nz += std::norm(z1);
        }
        return num.real() / std::sqrt(nz);
    }
}
