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

#include "irsbim/snr_opt.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace irsbim::snr_opt
{
    std::string to_string(Method m)
    {
        switch (m)
        {
        case Method::identity:
            return "identity";
        case Method::exact:
            return "exact";
        case Method::sol1:
            return "sol1";
        default:
            return "sol2";
        }
    }

    Method method_from_string(const std::string &s)
    {
        if (s == "identity")
            return Method::identity;
        if (s == "exact")
            return Method::exact;
        if (s == "sol1")
            return Method::sol1;
        if (s == "sol2")
            return Method::sol2;
        throw Error("unknown optimizer '" + s + "' (expected exact, sol1, sol2 or identity)");
    }

    double objective_exact(const CMatrix &h, const CVector &theta, const CVector &b, cplx s)
    {
        if (theta.size() != h.cols() || b.size() != h.cols())
            throw Error("objective_exact: dimension mismatch");
        return (h * (theta.cwiseProduct(b) * s)).squaredNorm();
    }

    namespace
    {
        double quad_form(const CMatrix &g, const CVector &theta)
        {
            return theta.dot(g * theta).real();
        }

        void check_block(const CMatrix &h, int rs_index, int n3)
        {
            if (n3 < 1 || rs_index < 0 || (rs_index + 1) * n3 > h.cols())
                throw Error("reflecting-surface index out of range");
        }

        double lambda_min(const CMatrix &m)
        {
            Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
            return es.eigenvalues()[0];
        }
    }

    OptResult coordinate_ascent(const CMatrix &g, const CVector &theta0, const Options &opts)
    {
        const Eigen::Index n = g.rows();
        OptResult res;
        CVector th = theta0;
        double f = quad_form(g, th);
        res.objective_trace.push_back(f);
        for (int it = 0; it < opts.max_iter; ++it)
        {
            for (Eigen::Index i = 0; i < n; ++i)
            {
                cplx acc = 0.0;
                for (Eigen::Index j = 0; j < n; ++j)
                    if (j != i)
                        acc += g(i, j) * th[j];
                if (std::abs(acc) > 0.0)
                    th[i] = acc / std::abs(acc);
            }
            double fn = quad_form(g, th);
            res.objective_trace.push_back(fn);
            res.iterations = it + 1;
            if (fn - f <= opts.tol * std::fabs(f))
            {
                res.converged = true;
                break;
            }
            f = fn;
        }
        res.theta.theta = th;
        return res;
    }

    OptResult solve_sol1(const CMatrix &h, int rs_index, int n3, const Options &opts)
    {
        check_block(h, rs_index, n3);
        CMatrix hq = h.middleCols(rs_index * n3, n3);
        CMatrix g = hq.adjoint() * hq;
        OptResult r = coordinate_ascent(g, CVector::Ones(n3), opts);
        r.theta.offset = rs_index * n3;
        return r;
    }

    OptResult solve_sol2(const CMatrix &h, int rs_index, int n3, const Options &opts)
    {
        check_block(h, rs_index, n3);
        if (h.rows() < n3)
            throw Error("solve_sol2: requires n_r >= n3");
        CMatrix hq = h.middleCols(rs_index * n3, n3);
        CMatrix g = hq.adjoint() * hq;

        auto value = [&](const CVector &th)
        {
            CMatrix m = th.asDiagonal().toDenseMatrix().adjoint() * g * th.asDiagonal().toDenseMatrix();
            return lambda_min(0.5 * (m + CMatrix(m.adjoint())));
        };

        OptResult res;
        RVector alpha = RVector::Zero(n3);
        auto phases = [&](const RVector &a)
        {
            CVector th(a.size());
            for (Eigen::Index l = 0; l < a.size(); ++l)
                th[l] = std::polar(1.0, a[l]);
            return th;
        };
        CVector th = phases(alpha);
        double t = value(th);
        res.objective_trace.push_back(t);
        double step = 1.0;
        for (int it = 0; it < opts.max_iter; ++it)
        {
            res.iterations = it + 1;
            CMatrix m = th.asDiagonal().toDenseMatrix().adjoint() * g * th.asDiagonal().toDenseMatrix();
            Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + CMatrix(m.adjoint())));
            CVector z = es.eigenvectors().col(0);
            CVector w = th.cwiseProduct(z);
            CVector gw = g * w;
            // d lambda / d alpha_l = 2 Im{conj(theta_l z_l) (G w)_l}
            RVector grad(n3);
            for (int l = 0; l < n3; ++l)
                grad[l] = 2.0 * (std::conj(w[l]) * gw[l]).imag();
            double gn = grad.norm();
            bool improved = false;
            while (step > 1e-12 && gn > 1e-14 * std::max(1.0, std::fabs(t)))
            {
                RVector cand = alpha + step * grad / gn;
                CVector thc = phases(cand);
                double tc = value(thc);
                if (tc > t + opts.tol * std::fabs(t))
                {
                    alpha = cand;
                    th = thc;
                    t = tc;
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            res.objective_trace.push_back(t);
            if (!improved)
            {
                res.converged = true;
                break;
            }
        }
        res.theta.theta = th;
        res.theta.offset = rs_index * n3;
        return res;
    }

    OptResult solve_exact(const CMatrix &h, const CVector &b, cplx s, const Options &opts)
    {
        if (b.size() != h.cols())
            throw Error("solve_exact: dimension mismatch");
        CMatrix c = h * (b * s).asDiagonal();
        CMatrix g = c.adjoint() * c;
        return coordinate_ascent(g, CVector::Ones(h.cols()), opts);
    }

    Lemma1Result lemma1_check(const CMatrix &h_q, const CVector &theta_q, const CVector &b_q, cplx s)
    {
        if (theta_q.size() != h_q.cols() || b_q.size() != h_q.cols())
            throw Error("lemma1_check: dimension mismatch");
        Lemma1Result r;
        CVector x = b_q * s;
        r.lhs = (h_q * theta_q.asDiagonal() * x).squaredNorm();
        CMatrix a = h_q * theta_q.asDiagonal();
        CMatrix m = a.adjoint() * a;
        r.rhs = lambda_min(0.5 * (m + CMatrix(m.adjoint()))) * x.squaredNorm();
        r.holds = r.lhs >= r.rhs - 1e-9 * std::fabs(r.rhs);
        return r;
    }

    CVector optimize_surfaces(const CMatrix &h, int n2, int n3, Method method, const CMatrix &surface_beams,
                              const Options &opts)
    {
        if (h.cols() != n2 * n3)
            throw Error("optimize_surfaces: column count must equal n2 * n3");
        CVector theta = CVector::Ones(h.cols());
        if (method == Method::identity)
            return theta;
        for (int q = 0; q < n2; ++q)
        {
            OptResult r;
            if (method == Method::sol1)
                r = solve_sol1(h, q, n3, opts);
            else if (method == Method::sol2)
                r = solve_sol2(h, q, n3, opts);
            else
            {
                if (surface_beams.rows() != h.cols() || surface_beams.cols() != n2)
                    throw Error("optimize_surfaces: exact method needs one beam per surface");
                CMatrix hq = h.middleCols(q * n3, n3);
                CVector bq = surface_beams.col(q).segment(q * n3, n3);
                r = solve_exact(hq, bq, 1.0, opts);
            }
            theta.segment(q * n3, n3) = r.theta.theta;
        }
        return theta;
    }
}
