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


#include "irsbim/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace irsbim::report
{
    std::string fmt(double x)
    {
        if (std::isnan(x))
            return "nan";
        if (std::isinf(x))
            return x > 0 ? "inf" : "-inf";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.10g", x);
        return buf;
    }

    void write_ber_csv(const sim::BerCurve &curve, std::ostream &os)
    {
        bool has_ub = std::any_of(curve.points.begin(), curve.points.end(), [](const auto &p) { return p.ub.has_value(); });
        os << "sweep_var,value,detector,scheme,ber,stderr,trials" << (has_ub ? ",ub" : "") << '\n';
        for (const auto &p : curve.points)
        {
            os << curve.sweep_name << ',' << fmt(p.value) << ',' << curve.detector << ',' << curve.scheme << ','
               << fmt(p.ber) << ',' << fmt(p.std_error) << ',' << p.trials;
            if (has_ub)
                os << ',' << (p.ub ? fmt(*p.ub) : "");
            os << '\n';
        }
    }

    void write_bound_csv(const std::vector<sim::BoundPoint> &points, sim::SweepVar var, std::ostream &os)
    {
        os << "sweep_var,value,ber_upper,stderr,omega,pairs_evaluated,method\n";
        for (const auto &p : points)
            os << sim::to_string(var) << ',' << fmt(p.value) << ',' << fmt(p.ber_upper) << ',' << fmt(p.std_error)
               << ',' << p.omega << ',' << p.pairs_evaluated << ',' << p.method << '\n';
    }

    std::string slug(const std::string &s)
    {
        std::string out;
        for (unsigned char c : s)
        {
            if (std::isalnum(c))
                out += char(std::tolower(c));
            else if (!out.empty() && out.back() != '_')
                out += '_';
        }
        while (!out.empty() && out.back() == '_')
            out.pop_back();
        return out;
    }

    namespace
    {
        std::string escape(const std::string &s)
        {
            std::string out;
            for (char c : s)
            {
                switch (c)
                {
                case '<':
                    out += "&lt;";
                    break;
                case '>':
                    out += "&gt;";
                    break;
                case '&':
                    out += "&amp;";
                    break;
                case '"':
                    out += "&quot;";
                    break;
                default:
                    out += c;
                }
            }
            return out;
        }

        const char *kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};
    }

    std::string render_svg(const Plot &plot)
    {
        const double W = 640, H = 440, left = 70, right = 170, top = 40, bottom = 50;
        const double pw = W - left - right, ph = H - top - bottom;
        double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
        double ymin = xmin, ymax = -xmin;
        auto ty = [&](double y) { return plot.log_y ? std::log10(y) : y; };
        for (const auto &s : plot.series)
            for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
            {
                if (plot.log_y && !(s.y[i] > 0.0))
                    continue;
                xmin = std::min(xmin, s.x[i]);
                xmax = std::max(xmax, s.x[i]);
                ymin = std::min(ymin, ty(s.y[i]));
                ymax = std::max(ymax, ty(s.y[i]));
            }
        if (!std::isfinite(xmin))
        {
            xmin = 0;
            xmax = 1;
            ymin = plot.log_y ? -6 : 0;
            ymax = plot.log_y ? 0 : 1;
        }
        if (plot.log_y)
        {
            ymin = std::floor(ymin);
            ymax = std::max(std::ceil(ymax), ymin + 1);
        }
        if (xmax == xmin)
            xmax = xmin + 1;
        if (ymax == ymin)
            ymax = ymin + 1;
        auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
        auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

        std::ostringstream os;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
           << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
        os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        os << "<text x=\"" << left + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
           << escape(plot.title) << "</text>\n";
        os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
           << "\" fill=\"none\" stroke=\"black\"/>\n";

        // y grid: decades on a log axis
        int yt = plot.log_y ? int(ymax - ymin) : 5;
        for (int i = 0; i <= yt; ++i)
        {
            double v = ymin + (ymax - ymin) * i / yt;
            double y = py(v);
            os << "<line x1=\"" << left << "\" y1=\"" << fmt(y) << "\" x2=\"" << left + pw << "\" y2=\"" << fmt(y)
               << "\" stroke=\"#ddd\"/>\n";
            std::string lab = plot.log_y ? "1e" + fmt(v) : fmt(v);
            os << "<text x=\"" << left - 6 << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">" << lab
               << "</text>\n";
        }
        for (int i = 0; i <= 5; ++i)
        {
            double v = xmin + (xmax - xmin) * i / 5;
            double x = px(v);
            os << "<line x1=\"" << fmt(x) << "\" y1=\"" << top << "\" x2=\"" << fmt(x) << "\" y2=\"" << top + ph
               << "\" stroke=\"#ddd\"/>\n";
            os << "<text x=\"" << fmt(x) << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">" << fmt(v)
               << "</text>\n";
        }
        os << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">"
           << escape(plot.x_label) << "</text>\n";
        os << "<text transform=\"translate(18 " << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
           << escape(plot.y_label) << "</text>\n";

        for (size_t k = 0; k < plot.series.size(); ++k)
        {
            const auto &s = plot.series[k];
            const char *col = kColors[k % (sizeof kColors / sizeof *kColors)];
            std::string pts;
            for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
            {
                if (plot.log_y && !(s.y[i] > 0.0))
                    continue;
                pts += fmt(px(s.x[i])) + "," + fmt(py(ty(s.y[i]))) + " ";
            }
            os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.8\""
               << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"" << pts << "\"/>\n";
            double ly = top + 12 + 18.0 * double(k);
            os << "<line x1=\"" << left + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 34 << "\" y2=\""
               << ly << "\" stroke=\"" << col << "\" stroke-width=\"1.8\""
               << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
            os << "<text x=\"" << left + pw + 40 << "\" y=\"" << ly + 4 << "\">" << escape(s.label) << "</text>\n";
        }
        os << "</svg>\n";
        return os.str();
    }

    std::string hex64(std::uint64_t v)
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
        return buf;
    }

    std::string manifest_json(const Manifest &m)
    {
        nlohmann::ordered_json j;
        j["command"] = m.command;
        j["config_hash"] = m.config_hash;
        j["seed"] = m.seed;
        j["version"] = version_string();
        auto outs = nlohmann::ordered_json::array();
        for (const auto &o : m.outputs)
            outs.push_back({{"file", o.name}, {"fnv1a64", hex64(o.hash)}});
        j["outputs"] = outs;
        return j.dump(2) + "\n";
    }

    void write_file(const std::string &dir, const std::string &name, const std::string &content, Manifest &m)
    {
        std::filesystem::path p = std::filesystem::path(dir) / name;
        std::ofstream out(p, std::ios::binary);
        if (!out)
            throw Error("cannot write '" + p.string() + "'");
        out << content;
        out.close();
        if (!out)
            throw Error("failed writing '" + p.string() + "'");
        m.outputs.push_back({name, fnv1a64(content)});
    }
}
