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

#ifndef IAC_FEASIBILITY_HPP
#define IAC_FEASIBILITY_HPP

#include "iac/system_model.hpp"

#include <string_view>
#include <vector>

namespace iac
{
    // The three families of integer inequalities that decide whether closed-form
    // symbol-to-symbol transceivers exist for a DoF tuple.
    enum class InequalityKind
    {
        ReceiverPair,    // d_k + max{d_(k+1..K)} <= M, one per receiver k in [1, k_IAC]
        TailSum,         // sum of d_(k_IAC+1..K) <= M
        AlignmentBudget, // d_1 + sum (k-1) d_k over aligned receivers + (k_IAC-1) * tail <= k_IAC * M
    };

    std::string_view to_string(InequalityKind kind);

    struct InequalityCheck
    {
        InequalityKind kind;
        int receiver = 0; // only meaningful for ReceiverPair
        long lhs = 0;
        long rhs = 0;

        bool satisfied() const noexcept { return lhs <= rhs; }
    };

    struct FeasibilityVerdict
    {
        bool feasible = false;
        int k_iac = 0;
        std::vector<InequalityCheck> checks;              // every inequality evaluated
        std::vector<InequalityCheck> failed_inequalities; // the violated subset
    };

    // With k_IAC = 0 only the tail-sum check is evaluated (it holds by definition of k_IAC).
    FeasibilityVerdict check_feasibility(const SystemConfig &config);

    // Tuples reaching 2M DoF with k_IAC = 2, in lexicographic order. Empty unless K >= 4 and M >= 2.
    std::vector<std::vector<int>> enumerate_optimal_tuples(int num_antennas, int num_users);

    bool is_optimal_tuple(const SystemConfig &config);

} // namespace iac

#endif
