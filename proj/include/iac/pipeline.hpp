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

#ifndef IAC_PIPELINE_HPP
#define IAC_PIPELINE_HPP

#include "iac/iac_graph.hpp"
#include "iac/solver.hpp"
#include "iac/system_model.hpp"
#include "iac/verifier.hpp"

#include <cstdint>

namespace iac
{
    struct DesignOptions
    {
        std::uint64_t channel_seed = 1;
        std::uint64_t graph_seed = 1;
        bool optimal = false; // use the round-robin layout when the tuple qualifies
        int retry_budget = kDefaultRetryBudget;
        SolverOptions solver;
        Tolerances tolerances;
    };

    struct Design
    {
        SystemConfig config;
        ChannelSet channels;
        GraphBuild build;
        Transceivers transceivers;
        DesignReport report;
        bool used_optimal = false;
    };

    // channels -> graph -> closed-form transceivers -> verification. Infeasible tuples are rejected
    // before any channel is drawn. Solver failures propagate as exceptions; a failed verification does not throw.
    Design run_design(const SystemConfig &config, const DesignOptions &options);

} // namespace iac

#endif
