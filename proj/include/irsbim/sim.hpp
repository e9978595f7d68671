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
#include "irsbim/detect.hpp"
#include "irsbim/geometry.hpp"
#include "irsbim/mapping.hpp"
#include "irsbim/snr_opt.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace irsbim::sim
{
    // Channel estimation error model. The detector and the phase optimizer see
    // H + E with E iid CN(0, variance); `tracks_noise` pins the variance to sigmaR^2.
    struct EstimationError
    {
        bool enabled = false;
        bool tracks_noise = false;
        double variance = 0.0;
    };

    struct TrialConfig
    {
        geometry::LinkGeometry link; // grouped by surface for S3
        mapping::SchemeConfig scheme;
        beampattern::PatternMode mode = beampattern::PatternMode::physical;
        channel::ChannelParams channel; // n_cols and sigmaR_sq are filled in from the link and snr_db
        double snr_db = 10.0;
        detect::DetectorKind detector = detect::DetectorKind::ml;
        snr_opt::Method optimizer = snr_opt::Method::identity;
        snr_opt::Options opt_options;
        EstimationError est_error;
        std::uint64_t trials = 10000;
        std::uint64_t master_seed = 1;
        int workers = 1;
        int omp_cap = 0; // 0: n_t * n3

        void validate() const;
    };

    // sigmaR^2 giving the requested SNR for a bank: mean pattern energy over sigmaR^2
    double noise_variance(const beampattern::PatternBank &bank, double snr_db);

    struct TrialOutcome
    {
        Bits tx;
        Bits rx_ml; // empty when the detector did not run
        Bits rx_cs;
        int errors_ml = 0;
        int errors_cs = 0;
    };

    struct Tally
    {
        std::uint64_t trials = 0;
        std::uint64_t bits = 0;
        std::uint64_t errors_ml = 0;
        std::uint64_t errors_cs = 0;
    };

    class Simulator
    {
    public:
        explicit Simulator(TrialConfig cfg);

        const TrialConfig &config() const { return cfg_; }
        const beampattern::PatternBank &bank() const { return bank_; }
        const channel::ChannelParams &channel_params() const { return params_; }
        int bits_per_use() const { return n_b_; }

        // Fully determined by (master_seed, index)
        TrialOutcome run_trial(std::uint64_t index) const;

        // Trials [0, cfg.trials) over cfg.workers threads
        Tally run() const;

    private:
        TrialConfig cfg_;
        beampattern::PatternBank bank_;
        channel::ChannelParams params_;
        CMatrix los_;
        int n_b_ = 0;
    };

    struct BerPoint
    {
        double value = 0.0;
        double ber = 0.0;
        double std_error = 0.0;
        std::uint64_t trials = 0;
        std::uint64_t bit_errors = 0;
        std::optional<double> ub;
        std::optional<double> ub_std_error;
    };

    struct BerCurve
    {
        std::string sweep_name;
        std::string series;
        std::string detector;
        std::string scheme;
        std::vector<BerPoint> points;
    };

    BerPoint make_point(double value, std::uint64_t trials, int n_b, std::uint64_t errors);

    enum class SweepVar
    {
        snr_db,
        k_db,
        n_r,
        n_t
    };

    std::string to_string(SweepVar v);
    SweepVar sweep_var_from_string(const std::string &s);

    struct BoundOptions
    {
        int n_samples = 200;                                // channel draws, S3 path
        std::uint64_t pair_budget = std::uint64_t(1) << 20; // exact enumeration up to this many ordered pairs
        std::uint64_t sample_pairs = 4096;                  // pairs drawn beyond the budget
    };

    struct SweepSpec
    {
        SweepVar var = SweepVar::snr_db;
        std::vector<double> values;
        bool with_bound = false;
        BoundOptions bound;
    };

    // Applies one sweep value to a config; n_t changes rebuild nothing here, the simulator does
    TrialConfig apply_sweep_value(const TrialConfig &base, SweepVar var, double value);

    // Seed of a sweep point, so points are independent yet reproducible
    std::uint64_t point_seed(std::uint64_t master, std::size_t point);

    // One curve per active detector; both detectors share every channel and noise draw
    std::vector<BerCurve> run_sweep(const TrialConfig &cfg, const SweepSpec &spec, const std::string &series = "");

    struct BoundPoint
    {
        double value = 0.0;
        double ber_upper = 0.0;
        double std_error = 0.0;
        int omega = 0;
        std::uint64_t pairs_evaluated = 0;
        std::string method;
    };

    // Analytical upper bound at one configuration. S1/S2 use the closed form with
    // theta = 1; S3 uses channel sampling with the configured optimizer.
    BoundPoint bound_at(const TrialConfig &cfg, const BoundOptions &opts);

    std::vector<BoundPoint> run_bound(const TrialConfig &cfg, const SweepSpec &spec);
}
