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

#include "irsbim/specialfn.hpp"
#include "irsbim/common.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace irsbim::specialfn
{
    namespace
    {
        bool is_nonpositive_integer(long double x)
        {
            return x <= 0.0L && x == std::floor(x);
        }

        // Neumaier compensated sum of the 1F1 power series
        long double series_1f1(long double a, long double b, long double z)
        {
            long double sum = 1.0L, comp = 0.0L, term = 1.0L;
            const long double eps = std::numeric_limits<long double>::epsilon();
            for (int k = 0; k < 20000; ++k)
            {
                if (a + k == 0.0L)
                    break; // terminating polynomial
                term *= (a + k) / (b + k) * z / (k + 1);
                long double t = sum + term;
                if (std::fabs(sum) >= std::fabs(term))
                    comp += (sum - t) + term;
                else
                    comp += (term - t) + sum;
                sum = t;
                // past the peak of the terms and below working precision
                if (k > std::fabs(z) + std::fabs(a) && std::fabs(term) <= eps * 0.01L * std::fabs(sum + comp))
                    break;
            }
            return sum + comp;
        }
    }

    double q_function(double x)
    {
        return 0.5 * std::erfc(x / std::sqrt(2.0));
    }

    long double kummer_1f1_ld(long double a, long double b, long double z)
    {
        if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(z))
            throw Error("kummer_1f1: non-finite argument");
        if (is_nonpositive_integer(b))
            throw Error("kummer_1f1: b must not be a non-positive integer");
        bool ok = std::fabs(z) <= 50.0L || (z > 0.0L && z <= 1250.0L && a >= 0.0L);
        if (!ok)
            throw Error("kummer_1f1: argument outside supported range");
        if (z == 0.0L || a == 0.0L)
            return 1.0L;

        // Series with terms of one sign, directly or after Kummer's transformation
        if (b > 0.0L && a > 0.0L && z > 0.0L)
            return series_1f1(a, b, z);
        if (z < 0.0L && b > 0.0L && b - a >= 0.0L)
            return std::exp(z) * series_1f1(b - a, b, -z);
        // Mixed signs cancel in the plain series
        try
        {
            return boost::math::hypergeometric_1F1(a, b, z);
        }
        catch (const std::exception &e)
        {
            throw Error(std::string("kummer_1f1: ") + e.what());
        }
    }

    double kummer_1f1(double a, double b, double z)
    {
        long double v = kummer_1f1_ld(a, b, z);
        if (!std::isfinite(static_cast<double>(v)))
            throw Error("kummer_1f1: result overflows double precision");
        return static_cast<double>(v);
    }

    double pcf_d(double order, double z)
    {
        if (!std::isfinite(order) || !std::isfinite(z))
            throw Error("pcf_d: non-finite argument");
        if (order < -60.0 || order > 0.0 || std::fabs(z) > 50.0)
            throw Error("pcf_d: argument outside supported range");
        if (order == 0.0)
            return std::exp(-0.25 * z * z);

        // D_{-nu}(z) = exp(-z^2/4) / Gamma(nu) int_0^inf t^(nu-1) exp(-z t - t^2/2) dt.
        // The integrand is positive, so there is no cancellation for any z. It is
        // scaled by its peak value and split at the peak.
        const double nu = -order;
        const double peak = nu > 1.0 ? 0.5 * (-z + std::sqrt(z * z + 4.0 * (nu - 1.0))) : 0.0;
        auto phi = [nu, z](double t) { return (nu - 1.0) * std::log(t) - z * t - 0.5 * t * t; };
        const double phi0 = peak > 0.0 ? phi(peak) : 0.0;
        auto f = [&](double t)
        {
            if (t <= 0.0)
                return nu == 1.0 ? std::exp(-phi0) : 0.0;
            return std::exp(phi(t) - phi0);
        };
        double val = 0.0;
        boost::math::quadrature::exp_sinh<double> tail;
        if (peak > 0.0)
        {
            boost::math::quadrature::tanh_sinh<double> head;
            val = head.integrate(f, 0.0, peak) + tail.integrate(f, peak, std::numeric_limits<double>::infinity());
        }
        else
            val = tail.integrate(f, 0.0, std::numeric_limits<double>::infinity());
        double out = std::exp(phi0 - 0.25 * z * z - boost::math::lgamma(nu)) * val;
        if (!std::isfinite(out))
            throw Error("pcf_d: result overflows double precision");
        return out;
    }

    double incomplete_beta(double z, double a, int b)
    {
        if (!(z >= 0.0 && z <= 1.0) || !(a > 0.0) || b < 1)
            throw Error("incomplete_beta: require z in [0,1], a > 0, integer b >= 1");
        if (z == 0.0)
            return 0.0;
        double sum = 0.0, term = 1.0;
        for (int k = 0; k < b; ++k)
        {
            sum += term;
            term *= (a + k) / (k + 1) * (1.0 - z);
        }
        double log_beta = boost::math::lgamma(a) + boost::math::lgamma(double(b)) - boost::math::lgamma(a + b);
        return std::exp(log_beta + a * std::log(z)) * sum;
    }

    double pochhammer(double a, int n)
    {
        if (n < 0)
            throw Error("pochhammer: negative n");
        long double p = 1.0L;
        for (int k = 0; k < n; ++k)
            p *= (a + k);
        return static_cast<double>(p);
    }

    double binomial(int n, int k)
    {
        if (k < 0 || n < 0 || k > n)
            return 0.0;
        k = std::min(k, n - k);
        long double r = 1.0L;
        for (int i = 1; i <= k; ++i)
            r = r * (n - k + i) / i;
        return static_cast<double>(std::round(r));
    }

    double log_gamma(double x)
    {
        return boost::math::lgamma(x);
    }
}
