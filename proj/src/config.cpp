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
#include "irsbim/channel.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace irsbim::config
{
    using nlohmann::json;

    namespace
    {
        std::string child(const std::string &path, const std::string &key)
        {
            return path + "/" + key;
        }

        std::string child(const std::string &path, size_t index)
        {
            return path + "/" + std::to_string(index);
        }

        void expect_object(const json &j, const std::string &path)
        {
            if (!j.is_object())
                throw ConfigError(path.empty() ? "/" : path, "expected an object");
        }

        void check_keys(const json &j, const std::string &path, const std::set<std::string> &allowed)
        {
            expect_object(j, path);
            for (const auto &item : j.items())
                if (!allowed.count(item.key()))
                    throw ConfigError(child(path, item.key()), "unknown field");
        }

        const json *find(const json &j, const std::string &key)
        {
            auto it = j.find(key);
            return it == j.end() ? nullptr : &*it;
        }

        double number(const json &j, const std::string &path, const std::string &key, double lo, double hi)
        {
            const json *v = find(j, key);
            std::string p = child(path, key);
            if (!v)
                throw ConfigError(p, "missing required field");
            if (!v->is_number())
                throw ConfigError(p, "expected a number");
            double x = v->get<double>();
            if (!(x >= lo && x <= hi))
            {
                std::ostringstream os;
                os << "value " << x << " outside [" << lo << ", " << hi << "]";
                throw ConfigError(p, os.str());
            }
            return x;
        }

        std::int64_t integer(const json &j, const std::string &path, const std::string &key, std::int64_t lo,
                             std::int64_t hi)
        {
            const json *v = find(j, key);
            std::string p = child(path, key);
            if (!v)
                throw ConfigError(p, "missing required field");
            if (!v->is_number_integer())
                throw ConfigError(p, "expected an integer");
            std::int64_t x = v->is_number_unsigned() ? std::int64_t(v->get<std::uint64_t>()) : v->get<std::int64_t>();
            if (x < lo || x > hi)
                throw ConfigError(p, "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                                         std::to_string(hi) + "]");
            return x;
        }

        std::string text(const json &j, const std::string &path, const std::string &key,
                         const std::set<std::string> &allowed)
        {
            const json *v = find(j, key);
            std::string p = child(path, key);
            if (!v)
                throw ConfigError(p, "missing required field");
            if (!v->is_string())
                throw ConfigError(p, "expected a string");
            std::string s = v->get<std::string>();
            if (!allowed.empty() && !allowed.count(s))
            {
                std::string list;
                for (const auto &a : allowed)
                    list += (list.empty() ? "" : ", ") + a;
                throw ConfigError(p, "'" + s + "' is not one of " + list);
            }
            return s;
        }

        bool flag(const json &j, const std::string &path, const std::string &key)
        {
            const json *v = find(j, key);
            if (!v->is_boolean())
                throw ConfigError(child(path, key), "expected true or false");
            return v->get<bool>();
        }

        const std::set<std::string> kBlocks = {"geometry", "modulation", "channel", "optimizer", "detector", "sim"};

        void validate_blocks(const json &m)
        {
            const json &g = m.at("geometry");
            check_keys(g, "/geometry", {"irs1", "irs2", "distance", "element_width"});
            check_keys(g.at("irs1"), "/geometry/irs1", {"n_h", "n_w", "spacing", "carrier_freq"});
            check_keys(g.at("irs2"), "/geometry/irs2", {"n_h", "n_w", "spacing"});
            check_keys(m.at("modulation"), "/modulation",
                       {"scheme", "family", "order", "n_t", "rs_h", "rs_w", "pattern_mode"});
            check_keys(m.at("channel"), "/channel", {"n_r", "k_db", "sigma2_sq", "los_seed", "estimation_error"});
            check_keys(m.at("optimizer"), "/optimizer", {"method", "tol", "max_iter"});
            check_keys(m.at("sim"), "/sim", {"trials", "seed", "snr_db", "workers", "omp_cap"});
        }

        std::pair<size_t, size_t> line_column(const std::string &s, size_t byte)
        {
            size_t line = 1, col = 1;
            for (size_t i = 0; i < s.size() && i + 1 < byte; ++i)
            {
                if (s[i] == '\n')
                {
                    ++line;
                    col = 1;
                }
                else
                    ++col;
            }
            return {line, col};
        }
    }

    json default_document()
    {
        return json{
            {"schema_version", kSchemaVersion},
            {"name", "run"},
            {"geometry",
             {{"irs1", {{"n_h", 100}, {"n_w", 100}, {"spacing", 2.5e-3}, {"carrier_freq", 60e9}}},
              {"irs2", {{"n_h", 8}, {"n_w", 8}, {"spacing", 0.6}}},
              {"distance", 30.0},
              {"element_width", 0.1}}},
            {"modulation",
             {{"scheme", "S1"}, {"family", "qam"}, {"order", 16}, {"rs_h", 2}, {"rs_w", 2}, {"pattern_mode", "physical"}}},
            {"channel", {{"n_r", 16}, {"k_db", 0.0}, {"sigma2_sq", 0.0}, {"los_seed", 1}}},
            {"optimizer", {{"method", "auto"}, {"tol", 1e-8}, {"max_iter", 500}}},
            {"detector", "both"},
            {"sim", {{"trials", 10000}, {"seed", 1}, {"snr_db", 10.0}, {"workers", 1}, {"omp_cap", 0}}},
        };
    }

    geometry::LinkGeometry build_link(const json &m)
    {
        const json &g = m.at("geometry");
        const json &i1 = g.at("irs1");
        const json &i2 = g.at("irs2");
        geometry::ArrayConfig a;
        a.n_h = int(integer(i1, "/geometry/irs1", "n_h", 1, 4096));
        a.n_w = int(integer(i1, "/geometry/irs1", "n_w", 1, 4096));
        a.spacing = number(i1, "/geometry/irs1", "spacing", 1e-9, 1e3);
        a.carrier_freq = number(i1, "/geometry/irs1", "carrier_freq", 1.0, 1e15);
        int n_h = int(integer(i2, "/geometry/irs2", "n_h", 1, 1024));
        int n_w = int(integer(i2, "/geometry/irs2", "n_w", 1, 1024));
        double sp = number(i2, "/geometry/irs2", "spacing", 1e-9, 1e6);
        double d = number(g, "/geometry", "distance", 1e-9, 1e9);
        double dw = number(g, "/geometry", "element_width", 0.0, 1e6);
        geometry::LinkGeometry link = geometry::make_link(a, n_h, n_w, sp, d, dw);

        const json &mod = m.at("modulation");
        if (text(mod, "/modulation", "scheme", {"S1", "S2", "S3"}) == "S3")
        {
            int rh = int(integer(mod, "/modulation", "rs_h", 1, 1024));
            int rw = int(integer(mod, "/modulation", "rs_w", 1, 1024));
            if (n_h % rh || n_w % rw)
                throw ConfigError("/modulation/rs_h", "reflecting surfaces of " + std::to_string(rh) + "x" +
                                                          std::to_string(rw) + " do not tile a " +
                                                          std::to_string(n_h) + "x" + std::to_string(n_w) + " IRS2");
            link = geometry::group_by_surface(link, rh, rw);
        }
        return link;
    }

    sim::TrialConfig build_trial(const json &m)
    {
        validate_blocks(m);
        sim::TrialConfig t;
        t.link = build_link(m);

        const json &mod = m.at("modulation");
        const std::string mp = "/modulation";
        auto scheme = mapping::scheme_from_string(text(mod, mp, "scheme", {"S1", "S2", "S3"}));
        auto family = mapping::family_from_string(text(mod, mp, "family", {"qam", "psk"}));
        int order = int(integer(mod, mp, "order", 2, 1 << 16));
        if (order & (order - 1))
            throw ConfigError(child(mp, "order"), "modulation order must be a power of two");
        t.scheme.scheme = scheme;
        t.scheme.constellation = mapping::Constellation::make(family, order);
        t.mode = beampattern::mode_from_string(text(mod, mp, "pattern_mode", {"physical", "ideal"}));
        int n_irs2 = t.link.irs2.size();
        switch (scheme)
        {
        case mapping::Scheme::S1:
            t.scheme.n2 = n_irs2;
            t.scheme.n3 = 1;
            t.scheme.n_t = find(mod, "n_t") ? int(integer(mod, mp, "n_t", 1, 1)) : 1;
            break;
        case mapping::Scheme::S2:
            t.scheme.n2 = n_irs2;
            t.scheme.n3 = 1;
            t.scheme.n_t = find(mod, "n_t") ? int(integer(mod, mp, "n_t", 1, n_irs2)) : 2;
            break;
        case mapping::Scheme::S3:
            t.scheme.n3 = t.link.group_size();
            t.scheme.n2 = n_irs2 / t.scheme.n3;
            t.scheme.n_t = find(mod, "n_t") ? int(integer(mod, mp, "n_t", 1, t.scheme.n2)) : 1;
            break;
        }
        try
        {
            t.scheme.validate();
        }
        catch (const Error &e)
        {
            throw ConfigError(mp, e.what());
        }

        const json &ch = m.at("channel");
        const std::string cp = "/channel";
        t.channel.n_r = int(integer(ch, cp, "n_r", 1, 4096));
        const json &k = ch.at("k_db");
        if (k.is_string())
        {
            try
            {
                t.channel.k_factor = channel::k_from_string(k.get<std::string>());
            }
            catch (const Error &e)
            {
                throw ConfigError(child(cp, "k_db"), e.what());
            }
        }
        else
            t.channel.k_factor = channel::k_from_db(number(ch, cp, "k_db", -300.0, 300.0));
        t.channel.sigma2_sq = number(ch, cp, "sigma2_sq", 0.0, 1e12);
        t.channel.los_seed = std::uint64_t(integer(ch, cp, "los_seed", 0, std::numeric_limits<std::int64_t>::max()));
        if (const json *e = find(ch, "estimation_error"); e && !e->is_null())
        {
            t.est_error.enabled = true;
            if (e->is_string())
            {
                text(ch, cp, "estimation_error", {"sigma_r"});
                t.est_error.tracks_noise = true;
            }
            else
                t.est_error.variance = number(ch, cp, "estimation_error", 0.0, 1e12);
        }

        const json &op = m.at("optimizer");
        const std::string opp = "/optimizer";
        std::string method = text(op, opp, "method", {"auto", "identity", "exact", "sol1", "sol2"});
        if (method == "auto")
            t.optimizer = scheme == mapping::Scheme::S3 ? snr_opt::Method::sol1 : snr_opt::Method::identity;
        else
        {
            t.optimizer = snr_opt::method_from_string(method);
            if (scheme != mapping::Scheme::S3 && t.optimizer != snr_opt::Method::identity)
                throw ConfigError(child(opp, "method"), "phase optimization applies to scheme S3 only");
        }
        t.opt_options.tol = number(op, opp, "tol", 0.0, 1.0);
        t.opt_options.max_iter = int(integer(op, opp, "max_iter", 1, 1000000));

        t.detector = detect::detector_from_string(text(m, "", "detector", {"ml", "cs", "both"}));

        const json &s = m.at("sim");
        const std::string sp = "/sim";
        t.trials = std::uint64_t(integer(s, sp, "trials", 1, std::int64_t(1) << 40));
        t.master_seed = std::uint64_t(integer(s, sp, "seed", 0, std::numeric_limits<std::int64_t>::max()));
        t.snr_db = number(s, sp, "snr_db", -100.0, 200.0);
        t.workers = int(integer(s, sp, "workers", 1, 1024));
        t.omp_cap = int(integer(s, sp, "omp_cap", 0, 1 << 20));
        try
        {
            t.validate();
        }
        catch (const ConfigError &)
        {
            throw;
        }
        catch (const Error &e)
        {
            throw ConfigError("/", e.what());
        }
        return t;
    }

    RunConfig parse_config(const std::string &input)
    {
        json doc;
        try
        {
            doc = json::parse(input);
        }
        catch (const json::parse_error &e)
        {
            auto [line, col] = line_column(input, e.byte);
            std::string msg = e.what();
            auto pos = msg.find("syntax error");
            throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col),
                              pos == std::string::npos ? msg : msg.substr(pos));
        }
        expect_object(doc, "");
        check_keys(doc, "", {"schema_version", "name", "geometry", "modulation", "channel", "optimizer", "detector",
                             "sim", "sweep", "bound", "series", "output"});
        if (!find(doc, "schema_version"))
            throw ConfigError("/schema_version", "missing required field");
        if (integer(doc, "", "schema_version", 0, 1 << 20) != kSchemaVersion)
            throw ConfigError("/schema_version", "unsupported schema version, expected " +
                                                     std::to_string(kSchemaVersion));

        RunConfig cfg;
        cfg.document = doc;
        if (find(doc, "name"))
        {
            cfg.name = text(doc, "", "name", {});
            if (cfg.name.empty() || cfg.name.find_first_of("/\\") != std::string::npos)
                throw ConfigError("/name", "name must be non-empty and contain no path separators");
        }

        json base = default_document();
        for (const auto &b : kBlocks)
            if (const json *v = find(doc, b))
            {
                if (b != "detector")
                    expect_object(*v, "/" + b);
                if (b == "geometry")
                {
                    for (const char *sub : {"irs1", "irs2"})
                        if (const json *a = find(*v, sub))
                            expect_object(*a, "/geometry/" + std::string(sub));
                }
                base[b].merge_patch(*v);
            }

        if (const json *s = find(doc, "series"))
        {
            if (!s->is_array() || s->empty())
                throw ConfigError("/series", "expected a non-empty array");
            std::set<std::string> labels;
            for (size_t i = 0; i < s->size(); ++i)
            {
                const json &item = (*s)[i];
                std::string p = child("/series", i);
                std::set<std::string> allowed(kBlocks);
                allowed.insert("label");
                check_keys(item, p, allowed);
                std::string label = text(item, p, "label", {});
                if (label.empty() || label.find_first_of("/\\,\"") != std::string::npos)
                    throw ConfigError(child(p, "label"), "label must be non-empty without separators or quotes");
                if (!labels.insert(label).second)
                    throw ConfigError(child(p, "label"), "duplicate series label '" + label + "'");
                json merged = base;
                for (const auto &b : kBlocks)
                    if (const json *v = find(item, b))
                    {
                        if (b != "detector")
                            expect_object(*v, p + "/" + b);
                        merged[b].merge_patch(*v);
                    }
                try
                {
                    cfg.series.push_back({label, build_trial(merged)});
                }
                catch (const ConfigError &e)
                {
                    throw ConfigError(p + " -> " + e.where(), e.message());
                }
            }
        }
        else
            cfg.series.push_back({"", build_trial(base)});

        if (const json *sw = find(doc, "sweep"))
        {
            check_keys(*sw, "/sweep", {"var", "values"});
            cfg.sweep.var = sim::sweep_var_from_string(text(*sw, "/sweep", "var", {"snr_db", "k_db", "n_r", "n_t"}));
            const json *vals = find(*sw, "values");
            if (!vals)
                throw ConfigError("/sweep/values", "missing required field");
            if (!vals->is_array() || vals->empty())
                throw ConfigError("/sweep/values", "expected a non-empty array of numbers");
            for (size_t i = 0; i < vals->size(); ++i)
            {
                if (!(*vals)[i].is_number())
                    throw ConfigError(child("/sweep/values", i), "expected a number");
                cfg.sweep.values.push_back((*vals)[i].get<double>());
            }
            // every point must build for every series before anything runs
            for (size_t si = 0; si < cfg.series.size(); ++si)
                for (size_t i = 0; i < cfg.sweep.values.size(); ++i)
                {
                    try
                    {
                        sim::apply_sweep_value(cfg.series[si].trial, cfg.sweep.var, cfg.sweep.values[i])
                            .scheme.validate();
                    }
                    catch (const Error &e)
                    {
                        throw ConfigError(child("/sweep/values", i), e.what());
                    }
                }
        }

        if (const json *b = find(doc, "bound"))
        {
            check_keys(*b, "/bound", {"enabled", "n_samples", "pair_budget", "sample_pairs"});
            if (find(*b, "enabled"))
                cfg.sweep.with_bound = flag(*b, "/bound", "enabled");
            if (find(*b, "n_samples"))
                cfg.sweep.bound.n_samples = int(integer(*b, "/bound", "n_samples", 100, 1 << 24));
            if (find(*b, "pair_budget"))
                cfg.sweep.bound.pair_budget = std::uint64_t(integer(*b, "/bound", "pair_budget", 2, std::int64_t(1) << 40));
            if (find(*b, "sample_pairs"))
                cfg.sweep.bound.sample_pairs =
                    std::uint64_t(integer(*b, "/bound", "sample_pairs", 2, std::int64_t(1) << 32));
        }

        if (const json *o = find(doc, "output"))
        {
            check_keys(*o, "/output", {"dir", "plot"});
            if (find(*o, "dir"))
            {
                cfg.out_dir = text(*o, "/output", "dir", {});
                if (cfg.out_dir.empty())
                    throw ConfigError("/output/dir", "must not be empty");
            }
            if (find(*o, "plot"))
                cfg.plot = flag(*o, "/output", "plot");
        }
        return cfg;
    }

    RunConfig load_config(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ConfigError("", "cannot read config file '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_config(ss.str());
    }

    void apply_overrides(RunConfig &cfg, const Overrides &o)
    {
        for (auto &s : cfg.series)
        {
            if (o.seed >= 0)
                s.trial.master_seed = std::uint64_t(o.seed);
            if (o.trials > 0)
                s.trial.trials = std::uint64_t(o.trials);
            if (o.workers > 0)
                s.trial.workers = o.workers;
        }
        if (!o.out_dir.empty())
            cfg.out_dir = o.out_dir;
        if (o.plot)
            cfg.plot = true;
    }

    std::string canonical_text(const RunConfig &cfg, const Overrides &o)
    {
        // workers and output location do not change results
        json doc = cfg.document;
        doc.erase("output");
        auto drop_workers = [](json &d)
        {
            if (d.is_object() && d.contains("sim") && d["sim"].is_object())
            {
                d["sim"].erase("workers");
                if (d["sim"].empty())
                    d.erase("sim");
            }
        };
        drop_workers(doc);
        if (doc.contains("series") && doc["series"].is_array())
            for (auto &s : doc["series"])
                drop_workers(s);
        json j{{"config", doc}, {"seed", o.seed}, {"trials", o.trials}};
        return j.dump();
    }
}
