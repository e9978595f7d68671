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
#include "irsbim/config.hpp"
#include "irsbim/geometry.hpp"
#include "irsbim/mapping.hpp"
#include "irsbim/sim.hpp"
#include "irsbim/specialfn.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace irsbim;

namespace
{
    mapping::SchemeConfig scheme_config(const std::string &scheme, int n_t)
    {
        // defaults of the standard 8x8 IRS2, 2x2 reflecting surfaces for S3
        mapping::SchemeConfig c;
        c.scheme = mapping::scheme_from_string(scheme);
        switch (c.scheme)
        {
        case mapping::Scheme::S1:
            c.n2 = 64;
            c.n_t = 1;
            break;
        case mapping::Scheme::S2:
            c.n2 = 64;
            c.n_t = n_t > 0 ? n_t : 2;
            break;
        case mapping::Scheme::S3:
            c.n2 = 16;
            c.n3 = 4;
            c.n_t = n_t > 0 ? n_t : 1;
            break;
        }
        c.validate();
        return c;
    }

    config::RunConfig parse_json(const std::string &text)
    {
        return config::parse_config(text);
    }
}

PYBIND11_MODULE(_core, m)
{
    m.doc() = "IRS beam-index modulation simulator core";
    m.attr("__version__") = version_string();

    // translators are tried newest first, so the derived type goes last
    py::register_exception<Error>(m, "IrsbimError", PyExc_RuntimeError);
    py::register_exception<config::ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("bpcu", [](const std::string &scheme, int n_t) { return mapping::bpcu(scheme_config(scheme, n_t)); },
          py::arg("scheme"), py::arg("n_t") = 0);
    m.def("colex_rank", &mapping::colex_rank, py::arg("index_set"));
    m.def("colex_unrank", &mapping::colex_unrank, py::arg("rank"), py::arg("k"));
    m.def(
        "constellation",
        [](const std::string &family, int order)
        { return mapping::Constellation::make(mapping::family_from_string(family), order).points(); },
        py::arg("family") = "qam", py::arg("order") = 16);
    m.def(
        "encode",
        [](const std::vector<int> &bits, const std::string &scheme, int n_t)
        {
            Bits b(bits.begin(), bits.end());
            auto cw = mapping::encode(b, scheme_config(scheme, n_t));
            return py::make_tuple(cw.index_set, cw.symbol_idx);
        },
        py::arg("bits"), py::arg("scheme"), py::arg("n_t") = 0);
    m.def(
        "decode",
        [](const std::vector<int> &index_set, int symbol_idx, const std::string &scheme, int n_t)
        {
            mapping::Codeword cw;
            cw.index_set = index_set;
            cw.symbol_idx = symbol_idx;
            auto b = mapping::decode(cw, scheme_config(scheme, n_t));
            return std::vector<int>(b.begin(), b.end());
        },
        py::arg("index_set"), py::arg("symbol_idx"), py::arg("scheme"), py::arg("n_t") = 0);

    m.def(
        "validate_design",
        [](const std::string &config_json)
        {
            auto cfg = parse_json(config_json);
            py::list out;
            for (const auto &c : geometry::validate_design(cfg.base().link, cfg.base().scheme.constellation.order()))
            {
                py::dict d;
                d["rule"] = c.rule;
                d["name"] = c.name;
                d["passed"] = c.passed;
                d["informational"] = c.informational;
                d["measured"] = c.measured;
                d["threshold"] = c.threshold;
                out.append(d);
            }
            return out;
        },
        py::arg("config_json"));

    m.def(
        "pattern_bank",
        [](const std::string &config_json)
        {
            auto cfg = parse_json(config_json);
            const auto &t = cfg.base();
            auto bank = beampattern::build_bank(t.link, t.scheme, t.mode);
            CMatrix pats(bank.columns(), bank.omega());
            for (int p = 0; p < bank.omega(); ++p)
                pats.col(p) = bank.pattern(p);
            return pats;
        },
        py::arg("config_json"), "columns x omega matrix of pattern vectors");

    m.def("q_function", &specialfn::q_function);
    m.def("kummer_1f1", &specialfn::kummer_1f1, py::arg("a"), py::arg("b"), py::arg("z"));
    m.def("pcf_d", &specialfn::pcf_d, py::arg("order"), py::arg("z"));
    m.def("mrc_tail", &analysis::mrc_tail, py::arg("beta"), py::arg("n_r"));

    py::class_<analysis::PairwiseParams>(m, "PairwiseParams")
        .def_readonly("beta1", &analysis::PairwiseParams::beta1)
        .def_readonly("q", &analysis::PairwiseParams::q)
        .def_readonly("q_r", &analysis::PairwiseParams::q_r)
        .def_readonly("sigma_z1_sq", &analysis::PairwiseParams::sigma_z1_sq)
        .def_readonly("sigma_z2_sq", &analysis::PairwiseParams::sigma_z2_sq)
        .def_readonly("sigma_kappa_sq", &analysis::PairwiseParams::sigma_kappa_sq)
        .def_readonly("v", &analysis::PairwiseParams::v)
        .def_readonly("beta2", &analysis::PairwiseParams::beta2);

    m.def(
        "pairwise_params",
        [](const CVector &pi, const CVector &pj, const CVector &pk, const CMatrix &m_, double sigmaR_sq)
        { return analysis::pairwise_params(pi, pj, pk, m_, sigmaR_sq); },
        py::arg("pi"), py::arg("pj"), py::arg("pk"), py::arg("m"), py::arg("sigmaR_sq"));
    m.def("prob_jk", &analysis::prob_jk, py::arg("params"), py::arg("n_r"));
    m.def("prob_jk_pochhammer", &analysis::prob_jk_pochhammer, py::arg("params"), py::arg("n_r"));
    m.def("kappa_pdf", &analysis::kappa_pdf, py::arg("kappa"), py::arg("params"), py::arg("n_r"));

    m.def(
        "average_ber_bound",
        [](const std::string &config_json, std::uint64_t pair_budget, std::uint64_t sample_pairs)
        {
            auto cfg = parse_json(config_json);
            sim::BoundOptions o;
            o.pair_budget = pair_budget;
            o.sample_pairs = sample_pairs;
            auto b = sim::bound_at(cfg.base(), o);
            py::dict d;
            d["ber_upper"] = b.ber_upper;
            d["stderr"] = b.std_error;
            d["omega"] = b.omega;
            d["pairs_evaluated"] = b.pairs_evaluated;
            d["method"] = b.method;
            return d;
        },
        py::arg("config_json"), py::arg("pair_budget") = std::uint64_t(1) << 20, py::arg("sample_pairs") = 4096);

    py::class_<sim::Simulator>(m, "Simulator")
        .def(py::init([](const std::string &config_json) { return sim::Simulator(parse_json(config_json).base()); }),
             py::arg("config_json"))
        .def_property_readonly("bits_per_use", &sim::Simulator::bits_per_use)
        .def_property_readonly("sigmaR_sq", [](const sim::Simulator &s) { return s.channel_params().sigmaR_sq; })
        .def(
            "run_trial",
            [](const sim::Simulator &s, std::uint64_t index)
            {
                auto o = s.run_trial(index);
                py::dict d;
                d["tx"] = std::vector<int>(o.tx.begin(), o.tx.end());
                d["rx_ml"] = std::vector<int>(o.rx_ml.begin(), o.rx_ml.end());
                d["rx_cs"] = std::vector<int>(o.rx_cs.begin(), o.rx_cs.end());
                d["errors_ml"] = o.errors_ml;
                d["errors_cs"] = o.errors_cs;
                return d;
            },
            py::arg("index"))
        .def(
            "run",
            [](const sim::Simulator &s)
            {
                sim::Tally t;
                {
                    py::gil_scoped_release release;
                    t = s.run();
                }
                py::dict d;
                d["trials"] = t.trials;
                d["bits"] = t.bits;
                d["errors_ml"] = t.errors_ml;
                d["errors_cs"] = t.errors_cs;
                return d;
            });

    m.def(
        "parse_config",
        [](const std::string &config_json)
        {
            auto cfg = parse_json(config_json);
            py::dict d;
            d["name"] = cfg.name;
            py::list labels;
            for (const auto &s : cfg.series)
                labels.append(s.label);
            d["series"] = labels;
            d["sweep_var"] = sim::to_string(cfg.sweep.var);
            d["sweep_values"] = cfg.sweep.values;
            d["bpcu"] = mapping::bpcu(cfg.base().scheme);
            return d;
        },
        py::arg("config_json"));
}
