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
#include "irsbim/channel.hpp"
#include "irsbim/common.hpp"
#include "irsbim/snr_opt.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace irsbim::analysis
{
    // Statistics of the decision variables for transmitted pattern i, competitor j and
    // third pattern k. With z1 = A (Pi_j - Pi_k) / sqrt(2 sigmaR^2) and
    // z2 = A (Pi_j + Pi_k - 2 Pi_i) / sqrt(2 sigmaR^2):
    //   sigma_z1_sq, sigma_z2_sq  per-entry variances
    //   q = E[z1 conj(z2)] per entry
    //   sigma_kappa_sq = sigma_z2_sq - |q|^2 / sigma_z1_sq   (residual variance of z2 given z1)
    struct PairwiseParams
    {
        double beta1 = 0.0;
        cplx q = 0.0;
        double q_r = 0.0;
        double sigma_z1_sq = 0.0;
        double sigma_z2_sq = 0.0;
        double sigma_kappa_sq = 0.0;
        double v = 0.0;     // 1 + sigma_kappa_sq sigma_z1_sq / q_r^2, 0 when q_r = 0
        double beta2 = 0.0; // q_r^2 / ((2 + sigma_kappa_sq) sigma_z1_sq)
    };

    // Effective covariance seen through the phases: Theta^H Sigma_c Theta
    CMatrix through_phases(const CMatrix &sigma_c, const CVector &theta);

    PairwiseParams pairwise_params(const beampattern::PatternBank &bank, int i, int j, int k, const CVector &theta,
                                   const CMatrix &sigma_c, double sigmaR_sq, int n_r);

    // Same quantities from explicit pattern vectors
    PairwiseParams pairwise_params(const CVector &pi, const CVector &pj, const CVector &pk, const CMatrix &m,
                                   double sigmaR_sq);

    // Pr{r_j > r_i}
    double prob_ji(double beta1, int n_r);

    // Pr{r_j > r_k}, k != i. Binomial-sum form.
    double prob_jk(const PairwiseParams &p, int n_r);

    // Same probability through the Pochhammer / incomplete-beta form in (v, sigma_kappa_sq)
    double prob_jk_pochhammer(const PairwiseParams &p, int n_r);

    // E[Q(sqrt(2 beta X))], X ~ Gamma(n_r, 1)
    double mrc_tail(double beta, int n_r);

    double pairwise_bound(const beampattern::PatternBank &bank, int i, int j, const CVector &theta,
                          const CMatrix &sigma_c, double sigmaR_sq, int n_r);

    struct BoundResult
    {
        double ber_upper = 0.0; // clamped to [0, 1]
        double raw = 0.0;       // unclamped sum
        double std_error = 0.0;
        int omega = 0;
        int n_b = 0;
        std::uint64_t pairs_evaluated = 0;
        bool exact = true;
        std::string method;
        std::optional<Eigen::MatrixXd> per_pair; // min-pairwise probabilities, exact path only
    };

    // All ordered pairs when omega (omega - 1) <= pair_budget, otherwise `sample_pairs`
    // uniform ordered pairs with the sum rescaled and a standard error reported
    BoundResult average_ber_bound(const beampattern::PatternBank &bank, const CVector &theta,
                                  const CMatrix &sigma_c, double sigmaR_sq, int n_r,
                                  std::uint64_t pair_budget = std::uint64_t(1) << 20, std::uint64_t seed = 1,
                                  bool keep_per_pair = false, std::uint64_t sample_pairs = 4096);

    // Pr{r_j > r_k | A} for an exact noise covariance
    double conditional_prob(const CMatrix &a, const CMatrix &sigma, const beampattern::PatternBank &bank, int i,
                            int j, int k);

    BoundResult sampled_bound_s3(const channel::ChannelParams &params, snr_opt::Method method,
                                 const snr_opt::Options &opts, const beampattern::PatternBank &bank, int n_samples,
                                 Rng &rng, std::uint64_t pair_budget = std::uint64_t(1) << 20,
                                 std::uint64_t sample_pairs = 4096);

    struct GammaLawResult
    {
        double statistic = 0.0;
        double p_value = 0.0;
        bool passed = false;
        double sample_mean = 0.0;
        double rate = 0.0;
        std::vector<double> samples;
    };

    GammaLawResult gamma_law_check(const beampattern::PatternBank &bank, int i, int j, const CVector &theta,
                                   const channel::ChannelParams &params, int n_draws, Rng &rng);

    // Density of kappa = Re{z1^H z2} / ||z1|| for q_r != 0
    double kappa_pdf(double kappa, const PairwiseParams &p, int n_r);

    // Draw kappa from its construction
    double sample_kappa(const PairwiseParams &p, int n_r, Rng &rng);
}
