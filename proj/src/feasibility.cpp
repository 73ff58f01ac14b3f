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

#include "iac/feasibility.hpp"

#include <algorithm>
#include <functional>

namespace iac
{
    std::string_view to_string(InequalityKind kind)
    {
        switch (kind)
        {
        case InequalityKind::ReceiverPair:
            return "receiver_pair";
        case InequalityKind::TailSum:
            return "tail_sum";
        case InequalityKind::AlignmentBudget:
            return "alignment_budget";
        }
        return "unknown";
    }

    FeasibilityVerdict check_feasibility(const SystemConfig &config)
    {
        const int k_users = config.num_users();
        const long m = config.num_antennas();
        FeasibilityVerdict verdict;
        verdict.k_iac = compute_k_iac(config);
        const int k_iac = verdict.k_iac;

        for (int k = 1; k <= k_iac; ++k)
        {
            int later_max = 0;
            for (int j = k + 1; j <= k_users; ++j)
                later_max = std::max(later_max, config.dof(j));
            verdict.checks.push_back({InequalityKind::ReceiverPair, k, config.dof(k) + later_max, m});
        }

        long tail = 0;
        for (int j = k_iac + 1; j <= k_users; ++j)
            tail += config.dof(j);
        verdict.checks.push_back({InequalityKind::TailSum, 0, tail, m});

        if (k_iac >= 1)
        {
            long budget = config.dof(1);
            for (int k = 1; k <= k_iac; ++k)
                budget += static_cast<long>(k - 1) * config.dof(k);
            budget += static_cast<long>(k_iac - 1) * tail;
            verdict.checks.push_back({InequalityKind::AlignmentBudget, 0, budget, k_iac * m});
        }

        for (const InequalityCheck &check : verdict.checks)
            if (!check.satisfied())
                verdict.failed_inequalities.push_back(check);
        verdict.feasible = verdict.failed_inequalities.empty();
        return verdict;
    }

    std::vector<std::vector<int>> enumerate_optimal_tuples(int num_antennas, int num_users)
    {
        std::vector<std::vector<int>> out;
        const int m = num_antennas;
        if (num_users < 4 || m < 2)
            return out;
        const int cap = m / 2; // integer reading of max{d_j, j >= 3} <= M/2
        const int tail_users = num_users - 2;

        // compositions of M into tail_users parts in [1, cap], lexicographic
        std::vector<std::vector<int>> tails;
        std::vector<int> part;
        std::function<void(int)> compose = [&](int remaining)
        {
            const int slots_left = tail_users - static_cast<int>(part.size());
            if (slots_left == 0)
            {
                if (remaining == 0)
                    tails.push_back(part);
                return;
            }
            for (int x = 1; x <= cap; ++x)
            {
                const int rest = remaining - x;
                if (rest < slots_left - 1 || rest > (slots_left - 1) * cap)
                    continue;
                part.push_back(x);
                compose(rest);
                part.pop_back();
            }
        };
        compose(m);

        for (int d1 = 1; d1 < m; ++d1)
        {
            const int d2 = m - d1;
            for (const std::vector<int> &tail : tails)
            {
                const int tail_max = *std::max_element(tail.begin(), tail.end());
                if (d1 > m - tail_max || d2 > m - tail_max)
                    continue;
                std::vector<int> tuple{d1, d2};
                tuple.insert(tuple.end(), tail.begin(), tail.end());
                out.push_back(std::move(tuple));
            }
        }
        return out;
    }

    bool is_optimal_tuple(const SystemConfig &config)
    {
        const int k_users = config.num_users();
        const int m = config.num_antennas();
        if (k_users < 4)
            return false;
        int tail_sum = 0;
        int tail_max = 0;
        for (int j = 3; j <= k_users; ++j)
        {
            tail_sum += config.dof(j);
            tail_max = std::max(tail_max, config.dof(j));
        }
        return config.dof(1) + config.dof(2) == m && tail_sum == m && tail_max <= m / 2 &&
               config.dof(1) <= m - tail_max && config.dof(2) <= m - tail_max;
    }

} // namespace iac
