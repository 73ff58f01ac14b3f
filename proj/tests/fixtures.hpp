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

// Hand-built graphs and configurations shared by several test files.

#ifndef IAC_TESTS_FIXTURES_HPP
#define IAC_TESTS_FIXTURES_HPP

#include "iac/iac_graph.hpp"
#include "iac/system_model.hpp"

namespace fixtures
{
    // K = 5, M = 6, d = (3,1,3,2,2): k_IAC = 3, eleven streams in total
    inline iac::SystemConfig eleven_stream_config()
    {
        return iac::SystemConfig(6, {3, 1, 3, 2, 2});
    }

    // K = 5, M = 6, d = (3,3,2,2,2): reaches 2M = 12 with k_IAC = 2
    inline iac::SystemConfig twelve_stream_config()
    {
        return iac::SystemConfig(6, {3, 3, 2, 2, 2});
    }

    // A valid alignment graph for eleven_stream_config: one subgraph, 8 vertices, 8 edges, whose
    // only loop is the pair of parallel edges v_4_2 - v_5_1 (receivers 1 and 3).
    inline iac::IacGraph eleven_stream_graph()
    {
        using iac::StreamId;
        return iac::IacGraph(eleven_stream_config().streams_from(2),
                             {
                                 {StreamId{2, 1}, StreamId{3, 1}, 1},
                                 {StreamId{2, 1}, StreamId{4, 1}, 1},
                                 {StreamId{3, 3}, StreamId{5, 2}, 1},
                                 {StreamId{4, 2}, StreamId{3, 2}, 1},
                                 {StreamId{4, 2}, StreamId{5, 1}, 1},
                                 {StreamId{4, 1}, StreamId{3, 2}, 2},
                                 {StreamId{3, 3}, StreamId{5, 1}, 2},
                                 {StreamId{5, 1}, StreamId{4, 2}, 3},
                             });
    }

} // namespace fixtures

#endif
