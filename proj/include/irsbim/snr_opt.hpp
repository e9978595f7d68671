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

#include "irsbim/common.hpp"

#include <string>
#include <vector>

namespace irsbim::snr_opt
{
    enum class Method
    {
        identity, // theta = 1
        exact,
        sol1,
        sol2
    };

    std::string to_string(Method m);
    Method method_from_string(const std::string &s);

    struct Options
    {
        double tol = 1e-8;
        int max_iter = 500;
    };

    struct PhaseVector
    {
        CVector theta;
        int offset = 0; // first column the phases apply to
    };

    struct OptResult
    {
        PhaseVector theta;
        std::vector<double> objective_trace; // [0] is the objective at the initial point
        bool converged = false;
        int iterations = 0;
        double objective() const { return objective_trace.empty() ? 0.0 : objective_trace.back(); }
    };

    // ||H diag(theta) b s||^2
    double objective_exact(const CMatrix &h, const CVector &theta, const CVector &b, cplx s);

    // Maximizes theta^H G theta over unit-modulus theta by cyclic coordinate updates
    OptResult coordinate_ascent(const CMatrix &g, const CVector &theta0, const Options &opts);

    // Surrogate: maximize ||H_Q theta||^2 over the n3 columns of surface rs_index
    OptResult solve_sol1(const CMatrix &h, int rs_index, int n3, const Options &opts = {});

    // Minimax: maximize lambda_min(Theta_Q^H H_Q^H H_Q Theta_Q). Requires n_r >= n3.
    OptResult solve_sol2(const CMatrix &h, int rs_index, int n3, const Options &opts = {});

    // Direct: maximize ||H diag(b s) theta||^2 over all columns of h
    OptResult solve_exact(const CMatrix &h, const CVector &b, cplx s, const Options &opts = {});

    struct Lemma1Result
    {
        double lhs = 0.0;
        double rhs = 0.0;
        bool holds = false;
    };

    Lemma1Result lemma1_check(const CMatrix &h_q, const CVector &theta_q, const CVector &b_q, cplx s);

    // Full-length phase vector for all n2 surfaces of n3 columns each.
    // `surface_beams` (columns x n2) supplies b_Q for the exact method; symbol fixed to 1.
    CVector optimize_surfaces(const CMatrix &h, int n2, int n3, Method method, const CMatrix &surface_beams,
                              const Options &opts = {});
}
