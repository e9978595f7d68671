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

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace irsbim
{
    using cplx = std::complex<double>;
    using CVector = Eigen::VectorXcd;
    using CMatrix = Eigen::MatrixXcd;
    using RVector = Eigen::VectorXd;
    using Vec3 = Eigen::Vector3d;
    using Bits = std::vector<std::uint8_t>;
    using Rng = std::mt19937_64;

    constexpr double kPi = 3.14159265358979323846;

    // Thrown for bad arguments and unsupported numeric ranges
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // SplitMix64 finalizer
    std::uint64_t splitmix64(std::uint64_t x);

    // Derive an independent stream seed from a master seed and a path of counters.
    // Used to give every (point, trial, purpose) its own RNG, so results never
    // depend on scheduling.
    std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

    // Standard circularly-symmetric complex Gaussian, E|x|^2 = 1
    inline cplx complex_normal(Rng &rng)
    {
        std::normal_distribution<double> n(0.0, 0.7071067811865476);
        double re = n(rng);
        double im = n(rng);
        return {re, im};
    }

    CMatrix complex_normal_matrix(Eigen::Index rows, Eigen::Index cols, Rng &rng);

    // FNV-1a 64-bit hash
    std::uint64_t fnv1a64(const std::string &data);

    std::string version_string();
}
