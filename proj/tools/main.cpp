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


#include "irsbim/config.hpp"
#include "irsbim/geometry.hpp"
#include "irsbim/report.hpp"
#include "irsbim/sim.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace irsbim;

namespace
{
    struct Options
    {
        std::string config;
        config::Overrides overrides;
    };

    std::string axis_label(sim::SweepVar v)
    {
        switch (v)
        {
        case sim::SweepVar::snr_db:
            return "SNR [dB]";
        case sim::SweepVar::k_db:
            return "Rician factor K [dB]";
        case sim::SweepVar::n_r:
            return "receive antennas N_R";
        default:
            return "active beams N_T";
        }
    }

    std::string stem(const config::RunConfig &cfg, const config::Series &s)
    {
        return s.label.empty() ? cfg.name : cfg.name + "_" + report::slug(s.label);
    }

    std::string curve_label(const config::Series &s, const std::string &what)
    {
        return s.label.empty() ? what : s.label + " " + what;
    }

    config::RunConfig load(const Options &o)
    {
        auto cfg = config::load_config(o.config);
        config::apply_overrides(cfg, o.overrides);
        return cfg;
    }

    void prepare_dir(const std::string &dir)
    {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec || !std::filesystem::is_directory(dir))
            throw Error("cannot create output directory '" + dir + "'");
    }

    report::Manifest start_manifest(const std::string &command, const config::RunConfig &cfg, const Options &o)
    {
        report::Manifest m;
        m.command = command;
        m.config_hash = report::hex64(fnv1a64(config::canonical_text(cfg, o.overrides)));
        m.seed = cfg.base().master_seed;
        return m;
    }

    void finish_manifest(const config::RunConfig &cfg, report::Manifest &m)
    {
        std::ofstream out(std::filesystem::path(cfg.out_dir) / "manifest.json", std::ios::binary);
        if (!out)
            throw Error("cannot write manifest in '" + cfg.out_dir + "'");
        out << report::manifest_json(m);
    }

    int cmd_validate(const Options &o)
    {
        auto cfg = load(o);
        bool ok = true;
        for (const auto &s : cfg.series)
        {
            if (!s.label.empty())
                std::cout << "series " << s.label << '\n';
            auto checks = geometry::validate_design(s.trial.link, s.trial.scheme.constellation.order());
            for (const auto &c : checks)
            {
                std::cout << "  rule " << c.rule << " " << std::left << std::setw(24) << c.name << std::right
                          << (c.informational ? " info" : (c.passed ? " PASS" : " FAIL")) << "  measured "
                          << report::fmt(c.measured) << "  threshold " << report::fmt(c.threshold);
                if (!c.note.empty())
                    std::cout << "  (" << c.note << ")";
                std::cout << '\n';
            }
            ok = ok && geometry::hard_rules_pass(checks);
        }
        std::cout << (ok ? "design rules satisfied" : "design rule violation") << '\n';
        return ok ? 0 : 1;
    }

    void require_sweep(const config::RunConfig &cfg)
    {
        if (cfg.sweep.values.empty())
            throw config::ConfigError("/sweep", "this command needs a sweep block with a non-empty grid");
    }

    int cmd_sweep(const Options &o, bool overlay, const std::string &command)
    {
        auto cfg = load(o);
        require_sweep(cfg);
        if (overlay)
            cfg.sweep.with_bound = true;
        prepare_dir(cfg.out_dir);
        auto manifest = start_manifest(command, cfg, o);
        report::Plot plot;
        plot.title = cfg.name;
        plot.x_label = axis_label(cfg.sweep.var);
        for (const auto &s : cfg.series)
        {
            std::cerr << "[" << cfg.name << "] " << (s.label.empty() ? "base" : s.label) << ": "
                      << cfg.sweep.values.size() << " points x " << s.trial.trials << " trials\n";
            auto curves = sim::run_sweep(s.trial, cfg.sweep, s.label);
            for (const auto &c : curves)
            {
                std::ostringstream os;
                report::write_ber_csv(c, os);
                report::write_file(cfg.out_dir, stem(cfg, s) + "_" + c.detector + ".csv", os.str(), manifest);
                report::PlotSeries ps;
                ps.label = curve_label(s, c.scheme + " " + c.detector);
                for (const auto &p : c.points)
                {
                    ps.x.push_back(p.value);
                    ps.y.push_back(p.ber);
                }
                plot.series.push_back(ps);
            }
            if (cfg.sweep.with_bound && !curves.empty())
            {
                report::PlotSeries ub;
                ub.label = curve_label(s, "UB");
                ub.dashed = true;
                for (const auto &p : curves.front().points)
                    if (p.ub)
                    {
                        ub.x.push_back(p.value);
                        ub.y.push_back(*p.ub);
                    }
                plot.series.push_back(ub);
            }
        }
        if (cfg.plot)
            report::write_file(cfg.out_dir, cfg.name + ".svg", report::render_svg(plot), manifest);
        finish_manifest(cfg, manifest);
        for (const auto &f : manifest.outputs)
            std::cout << (std::filesystem::path(cfg.out_dir) / f.name).string() << '\n';
        return 0;
    }

    int cmd_bound(const Options &o)
    {
        auto cfg = load(o);
        require_sweep(cfg);
        prepare_dir(cfg.out_dir);
        auto manifest = start_manifest("bound", cfg, o);
        report::Plot plot;
        plot.title = cfg.name + " upper bound";
        plot.x_label = axis_label(cfg.sweep.var);
        for (const auto &s : cfg.series)
        {
            std::cerr << "[" << cfg.name << "] bound " << (s.label.empty() ? "base" : s.label) << '\n';
            auto pts = sim::run_bound(s.trial, cfg.sweep);
            std::ostringstream os;
            report::write_bound_csv(pts, cfg.sweep.var, os);
            report::write_file(cfg.out_dir, stem(cfg, s) + "_bound.csv", os.str(), manifest);
            report::PlotSeries ps;
            ps.label = curve_label(s, "UB");
            ps.dashed = true;
            for (const auto &p : pts)
            {
                ps.x.push_back(p.value);
                ps.y.push_back(p.ber_upper);
            }
            plot.series.push_back(ps);
        }
        if (cfg.plot)
            report::write_file(cfg.out_dir, cfg.name + "_bound.svg", report::render_svg(plot), manifest);
        finish_manifest(cfg, manifest);
        for (const auto &f : manifest.outputs)
            std::cout << (std::filesystem::path(cfg.out_dir) / f.name).string() << '\n';
        return 0;
    }

    void add_common(CLI::App *sub, Options &o, bool run_flags)
    {
        sub->add_option("-c,--config", o.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
        if (!run_flags)
            return;
        sub->add_option("-o,--out", o.overrides.out_dir, "output directory (overrides the config)");
        sub->add_option("--seed", o.overrides.seed, "master seed")->check(CLI::NonNegativeNumber);
        sub->add_option("--trials", o.overrides.trials, "Monte-Carlo trials per point")->check(CLI::PositiveNumber);
        sub->add_option("--workers", o.overrides.workers, "worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--plot", o.overrides.plot, "also write an SVG plot");
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"irsbim: IRS beam-index modulation simulator"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);
    Options opt;
    auto *v = app.add_subcommand("validate", "check the geometry design rules");
    auto *s = app.add_subcommand("sweep", "Monte-Carlo BER over the sweep grid");
    auto *b = app.add_subcommand("bound", "analytical BER upper bound over the sweep grid");
    auto *c = app.add_subcommand("compare", "sweep with the upper bound overlaid");
    add_common(v, opt, false);
    add_common(s, opt, true);
    add_common(b, opt, true);
    add_common(c, opt, true);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try
    {
        if (v->parsed())
            return cmd_validate(opt);
        if (s->parsed())
            return cmd_sweep(opt, false, "sweep");
        if (b->parsed())
            return cmd_bound(opt);
        return cmd_sweep(opt, true, "compare");
    }
    catch (const config::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
