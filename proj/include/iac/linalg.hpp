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

#ifndef IAC_LINALG_HPP
#define IAC_LINALG_HPP

#include "iac/common.hpp"

#include <random>
#include <span>
#include <vector>

namespace iac::linalg
{
    // Matrices whose smallest/largest singular value ratio falls below this are treated as singular.
    inline constexpr double kConditioningFloor = 1e-10;

    // sigma_min / sigma_max; 0 for an all-zero or empty matrix
    double condition_ratio(const CMatrix &a);

    // Solves a * x = rhs for square a; throws SingularChannel when a fails the conditioning floor.
    CMatrix checked_solve(const CMatrix &a, const CMatrix &rhs, std::string_view what);

    // Number of singular values above rel_tol * sigma_max.
    int numerical_rank(const CMatrix &a, double rel_tol);

    // Stacks vectors as the columns of a rows x n matrix (rows x 0 when empty).
    CMatrix stack_columns(std::span<const CVector> columns, Eigen::Index rows);

    // Orthonormal basis (as columns) of the orthogonal complement of span(columns of a).
    // `a` has `rows` rows; an empty `a` yields the identity.
    CMatrix orthonormal_complement(const CMatrix &a, Eigen::Index rows, double rel_tol);

    // Orthonormal basis of the column space of a, using the same rank threshold.
    CMatrix orthonormal_range(const CMatrix &a, double rel_tol);

    // Smallest singular value (0 for empty input).
    double sigma_min(const CMatrix &a);

    // Circularly-symmetric complex Gaussian entry with unit variance.
    cx complex_normal(std::mt19937_64 &rng);

    CVector random_unit_vector(Eigen::Index size, std::mt19937_64 &rng);

} // namespace iac::linalg

#endif
