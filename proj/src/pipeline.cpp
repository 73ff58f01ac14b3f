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

#include "iac/pipeline.hpp"

#include "iac/feasibility.hpp"

namespace iac
{
    Design run_design(const SystemConfig &config, const DesignOptions &options)
    {
        const FeasibilityVerdict verdict = check_feasibility(config);
        if (!verdict.feasible)
        {
            const InequalityCheck &f = verdict.failed_inequalities.front();
            throw Error(ErrorCode::InfeasibleConfig, std::string(to_string(f.kind)) + " inequality fails (" +
                                                         std::to_string(f.lhs) + " > " + std::to_string(f.rhs) + ")");
        }

        ChannelSet channels = generate_channels(config, options.channel_seed);
        const bool optimal = options.optimal && is_optimal_tuple(config);
        GraphBuild build = optimal ? build_graph_optimal(config, options.graph_seed, options.retry_budget)
                                   : build_graph_general(config, options.graph_seed, options.retry_budget);
        // solver randomness (tree roots) is kept apart from the graph construction stream
        Transceivers tx = solve_transceivers(config, channels, build.graph, derive_seed(options.graph_seed, {1}),
                                             options.solver);
        DesignReport report =
            verify_design(channels, tx.precoders, tx.receivers, build.equations, config, options.tolerances);
        return Design{config, std::move(channels), std::move(build), std::move(tx), std::move(report), optimal};
    }

} // namespace iac
