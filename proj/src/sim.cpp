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


#include "irsbim/sim.hpp"
#include "irsbim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace irsbim::sim
{
    using beampattern::PatternBank;

    void TrialConfig::validate() const
    {
        if (trials < 1)
            throw Error("trials must be >= 1");
        if (workers < 1)
            throw Error("workers must be >= 1");
        if (!std::isfinite(snr_db))
            throw Error("snr_db must be finite");
        if (omp_cap < 0)
            throw Error("omp_cap must be >= 0");
        if (est_error.enabled && !est_error.tracks_noise && !(est_error.variance >= 0.0))
            throw Error("estimation error variance must be >= 0");
        scheme.validate();
        link.validate();
    }

    double noise_variance(const PatternBank &bank, double snr_db)
    {
        double e = bank.average_energy();
        if (!(e > 0.0))
            throw Error("pattern bank has zero energy");
        return e / std::pow(10.0, snr_db / 10.0);
    }

    Simulator::Simulator(TrialConfig cfg) : cfg_(std::move(cfg))
    {
        cfg_.validate();
        bank_ = beampattern::build_bank(cfg_.link, cfg_.scheme, cfg_.mode);
        params_ = cfg_.channel;
        params_.n_cols = bank_.columns();
        params_.sigmaR_sq = noise_variance(bank_, cfg_.snr_db);
        params_.validate();
        los_ = channel::los_matrix(params_.n_r, params_.n_cols, params_.los_seed);
        n_b_ = mapping::bpcu(cfg_.scheme);
    }

    TrialOutcome Simulator::run_trial(std::uint64_t index) const
    {
        // independent streams so detectors and schemes share channel and noise draws
        Rng rng_bits(derive_seed(cfg_.master_seed, index, 1));
        Rng rng_ch(derive_seed(cfg_.master_seed, index, 2));
        Rng rng_noise(derive_seed(cfg_.master_seed, index, 3));
        Rng rng_err(derive_seed(cfg_.master_seed, index, 4));

        TrialOutcome out;
        out.tx.resize(size_t(n_b_));
        std::bernoulli_distribution coin(0.5);
        for (auto &b : out.tx)
            b = coin(rng_bits) ? 1 : 0;
        auto cw = mapping::encode(out.tx, cfg_.scheme);
        int set = int(mapping::colex_rank(cw.index_set));
        CVector pattern = bank_.set_beams.col(set) * bank_.symbols[size_t(cw.symbol_idx)];

        CMatrix h = channel::sample_h(params_, los_, rng_ch);
        CMatrix h_est = h;
        if (cfg_.est_error.enabled)
        {
            double v = cfg_.est_error.tracks_noise ? params_.sigmaR_sq : cfg_.est_error.variance;
            h_est = channel::perturb_channel(h, v, rng_err);
        }

        CVector theta = CVector::Ones(h.cols());
        if (cfg_.optimizer != snr_opt::Method::identity)
            theta = snr_opt::optimize_surfaces(h_est, cfg_.scheme.n2, cfg_.scheme.n3, cfg_.optimizer,
                                               bank_.target_beams, cfg_.opt_options);

        CMatrix sigma = channel::noise_cov(h, params_.sigma2_sq, params_.sigmaR_sq);
        CVector y = h * theta.cwiseProduct(pattern) + channel::sample_noise(sigma, rng_noise);

        detect::Observation obs;
        obs.y = y;
        obs.a = h_est * theta.asDiagonal();
        obs.sigma = cfg_.est_error.enabled ? channel::noise_cov(h_est, params_.sigma2_sq, params_.sigmaR_sq) : sigma;
        auto w = detect::whiten(obs);

        if (cfg_.detector != detect::DetectorKind::cs)
        {
            out.rx_ml = detect::ml_detect(w, bank_).bits;
            out.errors_ml = mapping::hamming_distance(out.tx, out.rx_ml);
        }
        if (cfg_.detector != detect::DetectorKind::ml)
        {
            out.rx_cs = detect::cs_detect(w, bank_, cfg_.omp_cap).bits;
            out.errors_cs = mapping::hamming_distance(out.tx, out.rx_cs);
        }
        return out;
    }

    Tally Simulator::run() const
    {
        const std::uint64_t n = cfg_.trials;
        const int workers = int(std::min<std::uint64_t>(std::uint64_t(cfg_.workers), n));
        std::vector<Tally> parts(static_cast<size_t>(workers));
        std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
        auto body = [&](int w)
        {
            try
            {
                Tally &t = parts[size_t(w)];
                for (std::uint64_t i = std::uint64_t(w); i < n; i += std::uint64_t(workers))
                {
                    auto o = run_trial(i);
                    ++t.trials;
                    t.bits += std::uint64_t(n_b_);
                    t.errors_ml += std::uint64_t(o.errors_ml);
                    t.errors_cs += std::uint64_t(o.errors_cs);
                }
            }
            catch (...)
            {
                errors[size_t(w)] = std::current_exception();
            }
        };
        if (workers == 1)
            body(0);
        else
        {
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w)
                pool.emplace_back(body, w);
            for (auto &th : pool)
                th.join();
        }
        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
        // integer sums, so the split never changes the result
        Tally total;
        for (const auto &t : parts)
        {
            total.trials += t.trials;
            total.bits += t.bits;
            total.errors_ml += t.errors_ml;
            total.errors_cs += t.errors_cs;
        }
        return total;
    }

    BerPoint make_point(double value, std::uint64_t trials, int n_b, std::uint64_t errors)
    {
        BerPoint p;
        p.value = value;
        p.trials = trials;
        p.bit_errors = errors;
        double bits = double(trials) * n_b;
        p.ber = double(errors) / bits;
        p.std_error = std::sqrt(p.ber * (1.0 - p.ber) / bits);
        return p;
    }

    std::string to_string(SweepVar v)
    {
        switch (v)
        {
        case SweepVar::snr_db:
            return "snr_db";
        case SweepVar::k_db:
            return "k_db";
        case SweepVar::n_r:
            return "n_r";
        default:
            return "n_t";
        }
    }

    SweepVar sweep_var_from_string(const std::string &s)
    {
        if (s == "snr_db")
            return SweepVar::snr_db;
        if (s == "k_db")
            return SweepVar::k_db;
        if (s == "n_r")
            return SweepVar::n_r;
        if (s == "n_t")
            return SweepVar::n_t;
        throw Error("unknown sweep variable '" + s + "' (expected snr_db, k_db, n_r or n_t)");
    }

    namespace
    {
        int as_count(double value, const char *what)
        {
            if (!(value >= 1.0) || value != std::floor(value) || value > 1e6)
                throw Error(std::string(what) + " sweep values must be positive integers");
            return int(value);
        }
    }

    TrialConfig apply_sweep_value(const TrialConfig &base, SweepVar var, double value)
    {
        TrialConfig c = base;
        switch (var)
        {
        case SweepVar::snr_db:
            c.snr_db = value;
            break;
        case SweepVar::k_db:
            c.channel.k_factor = channel::k_from_db(value);
            break;
        case SweepVar::n_r:
            c.channel.n_r = as_count(value, "n_r");
            break;
        case SweepVar::n_t:
            c.scheme.n_t = as_count(value, "n_t");
            break;
        }
        return c;
    }

    std::uint64_t point_seed(std::uint64_t master, std::size_t point)
    {
        return derive_seed(master, 0x5EE9, std::uint64_t(point));
    }

    std::vector<BerCurve> run_sweep(const TrialConfig &cfg, const SweepSpec &spec, const std::string &series)
    {
        if (spec.values.empty())
            throw Error("sweep grid is empty");
        bool ml = cfg.detector != detect::DetectorKind::cs;
        bool cs = cfg.detector != detect::DetectorKind::ml;
        BerCurve c_ml, c_cs;
        for (auto *c : {&c_ml, &c_cs})
        {
            c->sweep_name = to_string(spec.var);
            c->series = series;
            c->scheme = mapping::to_string(cfg.scheme.scheme);
        }
        c_ml.detector = "ml";
        c_cs.detector = "cs";
        for (size_t i = 0; i < spec.values.size(); ++i)
        {
            TrialConfig pc = apply_sweep_value(cfg, spec.var, spec.values[i]);
            pc.master_seed = point_seed(cfg.master_seed, i);
            Simulator s(pc);
            Tally t = s.run();
            std::optional<BoundPoint> ub;
            if (spec.with_bound)
                ub = bound_at(pc, spec.bound);
            if (ml)
                c_ml.points.push_back(make_point(spec.values[i], t.trials, s.bits_per_use(), t.errors_ml));
            if (cs)
                c_cs.points.push_back(make_point(spec.values[i], t.trials, s.bits_per_use(), t.errors_cs));
            if (ub)
                for (auto *c : {&c_ml, &c_cs})
                    if (!c->points.empty())
                    {
                        c->points.back().ub = ub->ber_upper;
                        c->points.back().ub_std_error = ub->std_error;
                    }
        }
        std::vector<BerCurve> out;
        if (ml)
            out.push_back(std::move(c_ml));
        if (cs)
            out.push_back(std::move(c_cs));
        return out;
    }

    BoundPoint bound_at(const TrialConfig &cfg, const BoundOptions &opts)
    {
        cfg.validate();
        PatternBank bank = beampattern::build_bank(cfg.link, cfg.scheme, cfg.mode);
        channel::ChannelParams p = cfg.channel;
        p.n_cols = bank.columns();
        p.sigmaR_sq = noise_variance(bank, cfg.snr_db);
        p.validate();
        analysis::BoundResult r;
        if (cfg.scheme.scheme == mapping::Scheme::S3)
        {
            Rng rng(derive_seed(cfg.master_seed, 0xB0D));
            r = analysis::sampled_bound_s3(p, cfg.optimizer, cfg.opt_options, bank, opts.n_samples, rng,
                                           opts.pair_budget, opts.sample_pairs);
        }
        else
        {
            CVector theta = CVector::Ones(bank.columns());
            r = analysis::average_ber_bound(bank, theta, channel::effective_covariance(p), p.sigmaR_sq, p.n_r,
                                            opts.pair_budget, derive_seed(cfg.master_seed, 0xB0E), false,
                                            opts.sample_pairs);
        }
        BoundPoint b;
        b.ber_upper = r.ber_upper;
        b.std_error = r.std_error;
        b.omega = r.omega;
        b.pairs_evaluated = r.pairs_evaluated;
        b.method = r.method;
        return b;
    }

    std::vector<BoundPoint> run_bound(const TrialConfig &cfg, const SweepSpec &spec)
    {
        if (spec.values.empty())
            throw Error("sweep grid is empty");
        std::vector<BoundPoint> out;
        for (size_t i = 0; i < spec.values.size(); ++i)
        {
            TrialConfig pc = apply_sweep_value(cfg, spec.var, spec.values[i]);
            pc.master_seed = point_seed(cfg.master_seed, i);
            BoundPoint b = bound_at(pc, spec.bound);
            b.value = spec.values[i];
            out.push_back(b);
        }
        return out;
    }
}
