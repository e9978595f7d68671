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

#include <functional>
#include <vector>

namespace irsbim::stats
{
    struct TestResult
    {
        double statistic = 0.0;
        double p_value = 0.0;
        int dof = 0;
    };

    // Asymptotic Kolmogorov distribution tail with Stephens' small-sample correction
    double kolmogorov_pvalue(double d, double n_eff);

    TestResult ks_one_sample(std::vector<double> samples, const std::function<double(double)> &cdf);
    TestResult ks_two_sample(std::vector<double> a, std::vector<double> b);

    // Pearson chi-square goodness of fit. Bins with expected count below min_expected are
    // merged with their neighbour before testing. dof = bins - 1 - fitted.
    TestResult chi_square_gof(const std::vector<double> &observed, const std::vector<double> &expected,
                              int fitted = 0, double min_expected = 5.0);

    double gamma_cdf(double x, double shape, double rate);
    double normal_cdf(double x, double mean, double sd);
    double chi_square_sf(double x, int dof);

    double mean(const std::vector<double> &v);
    double variance(const std::vector<double> &v); // unbiased
}
