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

#include "irsbim/channel.hpp"

#include <algorithm>
#include <cmath>

namespace irsbim::channel
{
    void ChannelParams::validate() const
    {
        if (n_r < 1 || n_cols < 1)
            throw Error("ChannelParams: dimensions must be >= 1");
        if (!(k_factor >= 0.0))
            throw Error("ChannelParams: K must be >= 0");
        if (!(sigma2_sq >= 0.0) || !(sigmaR_sq >= 0.0))
            throw Error("ChannelParams: variances must be >= 0");
    }

    double k_from_db(double k_db)
    {
        if (std::isinf(k_db))
            return k_db > 0 ? std::numeric_limits<double>::infinity() : 0.0;
        return std::pow(10.0, k_db / 10.0);
    }

    double k_from_string(const std::string &s)
    {
        if (s == "rayleigh")
            return 0.0;
        if (s == "inf" || s == "los")
            return std::numeric_limits<double>::infinity();
        throw Error("unknown Rician factor '" + s + "' (expected a number in dB, rayleigh, inf or los)");
    }

    CMatrix los_matrix(int n_r, int n_cols, std::uint64_t los_seed)
    {
        Rng rng(derive_seed(los_seed, 0x105));
        std::uniform_real_distribution<double> ang(-kPi / 2, kPi / 2);
        double th_r = ang(rng);
        double th_t = ang(rng);
        CVector a_r(n_r), a_t(n_cols);
        for (int i = 0; i < n_r; ++i)
            a_r[i] = std::polar(1.0, kPi * i * std::sin(th_r));
        for (int i = 0; i < n_cols; ++i)
            a_t[i] = std::polar(1.0, kPi * i * std::sin(th_t));
        return a_r * a_t.adjoint();
    }

    namespace
    {
        double los_weight(double k)
        {
            return std::isinf(k) ? 1.0 : std::sqrt(k / (k + 1.0));
        }

        double diffuse_weight(double k)
        {
            return std::isinf(k) ? 0.0 : std::sqrt(1.0 / (k + 1.0));
        }

        void symmetrize(CMatrix &m)
        {
            m = 0.5 * (m + CMatrix(m.adjoint()));
        }
    }

    CMatrix mean_matrix(const ChannelParams &p)
    {
        p.validate();
        if (p.k_factor == 0.0)
            return CMatrix::Zero(p.n_r, p.n_cols);
        return los_weight(p.k_factor) * los_matrix(p.n_r, p.n_cols, p.los_seed);
    }

    CMatrix row_covariance(const ChannelParams &p)
    {
        double d = diffuse_weight(p.k_factor);
        return CMatrix::Identity(p.n_cols, p.n_cols) * (d * d);
    }

    CMatrix effective_covariance(const ChannelParams &p)
    {
        CMatrix hb = mean_matrix(p);
        CMatrix s = row_covariance(p) + hb.adjoint() * hb / double(p.n_r);
        symmetrize(s);
        return s;
    }

    CMatrix sample_h(const ChannelParams &p, const CMatrix &los, Rng &rng)
    {
        double d = diffuse_weight(p.k_factor);
        if (d == 0.0)
            return los_weight(p.k_factor) * los;
        CMatrix g = complex_normal_matrix(p.n_r, p.n_cols, rng);
        if (p.k_factor == 0.0)
            return g;
        return los_weight(p.k_factor) * los + d * g;
    }

    ChannelRealization sample_channel(const ChannelParams &p, Rng &rng)
    {
        p.validate();
        ChannelRealization c;
        CMatrix los = los_matrix(p.n_r, p.n_cols, p.los_seed);
        c.h = sample_h(p, los, rng);
        c.h_bar = p.k_factor == 0.0 ? CMatrix::Zero(p.n_r, p.n_cols) : CMatrix(los_weight(p.k_factor) * los);
        c.sigma_tilde_c = row_covariance(p);
        c.sigma_c = c.sigma_tilde_c + c.h_bar.adjoint() * c.h_bar / double(p.n_r);
        symmetrize(c.sigma_c);
        c.sigma = noise_cov(c.h, p.sigma2_sq, p.sigmaR_sq);
        return c;
    }

    CMatrix noise_cov(const CMatrix &h, double sigma2_sq, double sigmaR_sq)
    {
        if (!(sigma2_sq >= 0.0) || !(sigmaR_sq >= 0.0))
            throw Error("noise_cov: variances must be >= 0");
        if (sigma2_sq == 0.0 && sigmaR_sq == 0.0)
            throw Error("noise_cov: both noise variances are zero (singular noise model)");
        CMatrix s = CMatrix::Identity(h.rows(), h.rows()) * sigmaR_sq;
        if (sigma2_sq > 0.0)
            s += sigma2_sq * h * h.adjoint();
        symmetrize(s);
        return s;
    }

    CVector sample_noise(const CMatrix &sigma, Rng &rng)
    {
        if (sigma.rows() != sigma.cols())
            throw Error("sample_noise: covariance must be square");
        Eigen::LLT<CMatrix> llt(sigma);
        if (llt.info() != Eigen::Success || sigma.norm() == 0.0)
        {
            // semidefinite input: fall back to a pivoted LDL^T factor
            Eigen::LDLT<CMatrix> ldlt(sigma);
            if (ldlt.info() != Eigen::Success || sigma.norm() == 0.0)
                throw Error("sample_noise: covariance is not positive semidefinite");
            RVector d = ldlt.vectorD().real();
            if (d.minCoeff() < -1e-12 * std::max(1.0, d.maxCoeff()))
                throw Error("sample_noise: covariance is not positive semidefinite");
            CVector g(sigma.rows());
            for (Eigen::Index i = 0; i < g.size(); ++i)
                g[i] = complex_normal(rng) * std::sqrt(std::max(d[i], 0.0));
            CVector w = ldlt.matrixL() * g;
            return ldlt.transpositionsP().transpose() * w;
        }
        CVector g(sigma.rows());
        for (Eigen::Index i = 0; i < g.size(); ++i)
            g[i] = complex_normal(rng);
        return llt.matrixL() * g;
    }

    CMatrix perturb_channel(const CMatrix &h, double err_var, Rng &rng)
    {
        if (!(err_var >= 0.0))
            throw Error("perturb_channel: error variance must be >= 0");
        if (err_var == 0.0)
            return h;
        return h + std::sqrt(err_var) * complex_normal_matrix(h.rows(), h.cols(), rng);
    }
}
