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
#include <limits>
#include <string>

namespace irsbim::channel
{
    struct ChannelParams
    {
        int n_r = 16;
        int n_cols = 64;
        double k_factor = 0.0; // linear, may be +inf
        double sigma2_sq = 0.0;
        double sigmaR_sq = 1.0;
        std::uint64_t los_seed = 1;

        void validate() const;
    };

    // dB to linear; "rayleigh" is K = 0, "inf" or "los" is a pure line-of-sight channel
    double k_from_db(double k_db);
    double k_from_string(const std::string &s);

    struct ChannelRealization
    {
        CMatrix h;
        CMatrix h_bar;         // E[H]
        CMatrix sigma_tilde_c; // row covariance of H
        CMatrix sigma_c;       // sigma_tilde_c + h_bar^H h_bar / n_r
        CMatrix sigma;         // noise covariance
    };

    // Unit-modulus line-of-sight matrix a_r a_t^H; angles drawn from los_seed only
    CMatrix los_matrix(int n_r, int n_cols, std::uint64_t los_seed);

    // Deterministic moments of the channel law
    CMatrix mean_matrix(const ChannelParams &p);
    CMatrix row_covariance(const ChannelParams &p);
    CMatrix effective_covariance(const ChannelParams &p);

    ChannelRealization sample_channel(const ChannelParams &p, Rng &rng);

    // Only H, without the covariance bookkeeping
    CMatrix sample_h(const ChannelParams &p, const CMatrix &los, Rng &rng);

    CMatrix noise_cov(const CMatrix &h, double sigma2_sq, double sigmaR_sq);

    // w = L g with L the lower Cholesky factor of sigma
    CVector sample_noise(const CMatrix &sigma, Rng &rng);

    CMatrix perturb_channel(const CMatrix &h, double err_var, Rng &rng);
}
