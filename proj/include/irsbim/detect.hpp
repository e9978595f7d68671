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

#include "irsbim/beampattern.hpp"
#include "irsbim/common.hpp"

#include <string>
#include <vector>

namespace irsbim::detect
{
    enum class DetectorKind
    {
        ml,
        cs,
        both
    };

    std::string to_string(DetectorKind d);
    DetectorKind detector_from_string(const std::string &s);

    struct Observation
    {
        CVector y;
        CMatrix a;     // effective matrix H Theta
        CMatrix sigma; // noise covariance
    };

    // Observation after noise whitening with the Cholesky factor of sigma
    struct Whitened
    {
        CVector y;
        CMatrix a;
    };

    Whitened whiten(const Observation &obs);

    struct Decision
    {
        int pattern_id = -1;
        std::vector<int> index_set;
        int symbol_idx = 0;
        Bits bits;
        double metric_value = 0.0;
    };

    // Re{(y - A Pi / 2)^H Sigma^-1 A Pi}
    double ml_metric(const Observation &obs, const CVector &pattern);

    Decision ml_detect(const Observation &obs, const beampattern::PatternBank &bank);
    Decision ml_detect(const Whitened &w, const beampattern::PatternBank &bank);

    // Greedy sparse recovery; returns the sorted support. Column choice uses the raw
    // magnitude of the correlation with the residual, ties to the lowest column.
    std::vector<int> omp(const CVector &y, const CMatrix &a, int sparsity);

    // max_iter > 0 caps the number of OMP iterations below the sparsity
    Decision cs_detect(const Observation &obs, const beampattern::PatternBank &bank, int max_iter = 0);
    Decision cs_detect(const Whitened &w, const beampattern::PatternBank &bank, int max_iter = 0);

    // Addressable index set whose column span has the smallest symmetric difference with
    // `support`; ties to the lowest combinadic rank
    int nearest_set(const std::vector<int> &support, const beampattern::PatternBank &bank);
}
