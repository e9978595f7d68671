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

namespace irsbim::specialfn
{
    // Gaussian tail probability Q(x) = P(N(0,1) > x)
    double q_function(double x);

    // Kummer confluent hypergeometric 1F1(a; b; z)
    // Supported: b not a non-positive integer, -50 <= z <= 50.
    // Arguments up to z = 1250 are accepted when a >= 0 (all series terms positive).
    // Throws irsbim::Error outside the supported range or on overflow.
    double kummer_1f1(double a, double b, double z);

    // Same series in extended precision, no overflow check on the double range
    long double kummer_1f1_ld(long double a, long double b, long double z);

    // Parabolic cylinder function D_K(z) for real order K in [-60, 0] and |z| <= 50
    double pcf_d(double order, double z);

    // Incomplete beta B_z(a, b) = int_0^z t^(a-1) (1-t)^(b-1) dt for integer b >= 1
    double incomplete_beta(double z, double a, int b);

    // Rising factorial (a)_n
    double pochhammer(double a, int n);

    // Binomial coefficient as a double (exact below 2^53)
    double binomial(int n, int k);

    double log_gamma(double x);
}
