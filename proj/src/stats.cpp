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

#include "irsbim/stats.hpp"
#include "irsbim/common.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>

namespace irsbim::stats
{
    double kolmogorov_pvalue(double d, double n_eff)
    {
        double sn = std::sqrt(n_eff);
        double lambda = (sn + 0.12 + 0.11 / sn) * d;
        if (lambda < 0.2)
            return 1.0;
        double sum = 0.0;
        for (int k = 1; k <= 100; ++k)
        {
            double term = std::exp(-2.0 * k * k * lambda * lambda);
            sum += (k % 2 ? 1.0 : -1.0) * term;
            if (term < 1e-17)
                break;
        }
        return std::clamp(2.0 * sum, 0.0, 1.0);
    }

    TestResult ks_one_sample(std::vector<double> samples, const std::function<double(double)> &cdf)
    {
        if (samples.empty())
            throw Error("ks_one_sample: no samples");
        std::sort(samples.begin(), samples.end());
        double n = double(samples.size());
        double d = 0.0;
        for (size_t i = 0; i < samples.size(); ++i)
        {
            double f = cdf(samples[i]);
            d = std::max(d, std::max(f - double(i) / n, double(i + 1) / n - f));
        }
        return {d, kolmogorov_pvalue(d, n), 0};
    }

    TestResult ks_two_sample(std::vector<double> a, std::vector<double> b)
    {
        if (a.empty() || b.empty())
            throw Error("ks_two_sample: no samples");
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        double na = double(a.size()), nb = double(b.size());
        size_t i = 0, j = 0;
        double d = 0.0;
        while (i < a.size() && j < b.size())
        {
            double x = std::min(a[i], b[j]);
            while (i < a.size() && a[i] <= x)
                ++i;
            while (j < b.size() && b[j] <= x)
                ++j;
            d = std::max(d, std::fabs(double(i) / na - double(j) / nb));
        }
        return {d, kolmogorov_pvalue(d, na * nb / (na + nb)), 0};
    }

    TestResult chi_square_gof(const std::vector<double> &observed, const std::vector<double> &expected, int fitted,
                              double min_expected)
    {
        if (observed.size() != expected.size() || observed.empty())
            throw Error("chi_square_gof: size mismatch");
        std::vector<double> o, e;
        double acc_o = 0.0, acc_e = 0.0;
        for (size_t i = 0; i < observed.size(); ++i)
        {
            acc_o += observed[i];
            acc_e += expected[i];
            if (acc_e >= min_expected)
            {
                o.push_back(acc_o);
                e.push_back(acc_e);
                acc_o = acc_e = 0.0;
            }
        }
        if (acc_e > 0.0 || acc_o > 0.0)
        {
            if (e.empty())
                throw Error("chi_square_gof: expected counts too small");
            o.back() += acc_o;
            e.back() += acc_e;
        }
        double stat = 0.0;
        for (size_t i = 0; i < o.size(); ++i)
            stat += (o[i] - e[i]) * (o[i] - e[i]) / e[i];
        int dof = int(o.size()) - 1 - fitted;
        if (dof < 1)
            throw Error("chi_square_gof: not enough bins");
        return {stat, chi_square_sf(stat, dof), dof};
    }

    double gamma_cdf(double x, double shape, double rate)
    {
        if (x <= 0.0)
            return 0.0;
        return boost::math::gamma_p(shape, x * rate);
    }

    double normal_cdf(double x, double mean, double sd)
    {
        return 0.5 * std::erfc(-(x - mean) / (sd * std::sqrt(2.0)));
    }

    double chi_square_sf(double x, int dof)
    {
        boost::math::chi_squared dist(dof);
        return boost::math::cdf(boost::math::complement(dist, std::max(x, 0.0)));
    }

    double mean(const std::vector<double> &v)
    {
        double s = 0.0;
        for (double x : v)
            s += x;
        return v.empty() ? 0.0 : s / double(v.size());
    }

    double variance(const std::vector<double> &v)
    {
        if (v.size() < 2)
            return 0.0;
        double m = mean(v), s = 0.0;
        for (double x : v)
            s += (x - m) * (x - m);
        return s / double(v.size() - 1);
    }
}
