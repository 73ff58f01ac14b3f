// SPDX-License-Identifier: Apache-2.0
//
// iac - closed-form interference alignment and cancellation transceivers
// Copyright (C) 2026 The iac authors
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

#include "iac/linalg.hpp"

#include <cmath>

namespace iac::linalg
{
    namespace
    {
        Eigen::VectorXd singular_values(const CMatrix &a)
        {
            if (a.size() == 0)
                return {};
            return Eigen::JacobiSVD<CMatrix>(a).singularValues();
        }
    } // namespace

    double condition_ratio(const CMatrix &a)
    {
        const Eigen::VectorXd s = singular_values(a);
        if (s.size() == 0 || s(0) == 0.0)
            return 0.0;
        return s(s.size() - 1) / s(0);
    }

    CMatrix checked_solve(const CMatrix &a, const CMatrix &rhs, std::string_view what)
    {
        if (a.rows() != a.cols() || a.rows() != rhs.rows())
            throw std::invalid_argument("checked_solve: shape mismatch");
        const double ratio = condition_ratio(a);
        if (!(ratio > kConditioningFloor))
            throw Error(ErrorCode::SingularChannel,
                        std::string(what) + " has singular value ratio " + std::to_string(ratio));
        return a.partialPivLu().solve(rhs);
    }

    int numerical_rank(const CMatrix &a, double rel_tol)
    {
        const Eigen::VectorXd s = singular_values(a);
        if (s.size() == 0 || s(0) == 0.0)
            return 0;
        int rank = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) > rel_tol * s(0))
                ++rank;
        return rank;
    }

    CMatrix stack_columns(std::span<const CVector> columns, Eigen::Index rows)
    {
        CMatrix out(rows, static_cast<Eigen::Index>(columns.size()));
        for (std::size_t i = 0; i < columns.size(); ++i)
        {
            if (columns[i].size() != rows)
                throw std::invalid_argument("stack_columns: vector length mismatch");
            out.col(static_cast<Eigen::Index>(i)) = columns[i];
        }
        return out;
    }

    CMatrix orthonormal_complement(const CMatrix &a, Eigen::Index rows, double rel_tol)
    {
        if (a.cols() == 0)
            return CMatrix::Identity(rows, rows);
        Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU);
        const Eigen::VectorXd &s = svd.singularValues();
        Eigen::Index rank = 0;
        if (s.size() > 0 && s(0) > 0.0)
            while (rank < s.size() && s(rank) > rel_tol * s(0))
                ++rank;
        return svd.matrixU().rightCols(rows - rank);
    }

    CMatrix orthonormal_range(const CMatrix &a, double rel_tol)
    {
        if (a.cols() == 0)
            return CMatrix(a.rows(), 0);
        Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU);
        const Eigen::VectorXd &s = svd.singularValues();
        Eigen::Index rank = 0;
        if (s.size() > 0 && s(0) > 0.0)
            while (rank < s.size() && s(rank) > rel_tol * s(0))
                ++rank;
        return svd.matrixU().leftCols(rank);
    }

    double sigma_min(const CMatrix &a)
    {
        const Eigen::VectorXd s = singular_values(a);
        return s.size() == 0 ? 0.0 : s(s.size() - 1);
    }

    cx complex_normal(std::mt19937_64 &rng)
    {
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
        const double re = normal(rng);
        const double im = normal(rng);
        return {re, im};
    }

    CVector random_unit_vector(Eigen::Index size, std::mt19937_64 &rng)
    {
        CVector v(size);
        do
        {
            for (Eigen::Index i = 0; i < size; ++i)
                v(i) = complex_normal(rng);
        } while (v.norm() == 0.0);
        return v / v.norm();
    }

} // namespace iac::linalg
