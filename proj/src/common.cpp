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

#include "iac/common.hpp"

namespace iac
{
    std::string to_string(StreamId id)
    {
        return "v_" + std::to_string(id.tx) + "_" + std::to_string(id.stream);
    }

    std::string_view to_string(ErrorCode code)
    {
        switch (code)
        {
        case ErrorCode::InvalidConfig:
            return "InvalidConfig";
        case ErrorCode::InfeasibleConfig:
            return "InfeasibleConfig";
        case ErrorCode::ChannelGeneration:
            return "ChannelGeneration";
        case ErrorCode::ConstructionExhausted:
            return "ConstructionExhausted";
        case ErrorCode::MalformedGraph:
            return "MalformedGraph";
        case ErrorCode::SingularChannel:
            return "SingularChannel";
        case ErrorCode::DegenerateEigenproblem:
            return "DegenerateEigenproblem";
        case ErrorCode::DimensionOverflow:
            return "DimensionOverflow";
        case ErrorCode::RankDeficientPrecoder:
            return "RankDeficientPrecoder";
        case ErrorCode::SingularEffectiveChannel:
            return "SingularEffectiveChannel";
        case ErrorCode::MissingPoint:
            return "MissingPoint";
        case ErrorCode::ZeroVector:
            return "ZeroVector";
        case ErrorCode::Format:
            return "Format";
        }
        return "Unknown";
    }

    Error::Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
    {
    }

    ConstructionExhausted::ConstructionExhausted(int receiver, int restarts)
        : Error(ErrorCode::ConstructionExhausted,
                "receiver " + std::to_string(receiver) + " dead-ended after " + std::to_string(restarts) + " restarts"),
          receiver_(receiver), restarts_(restarts)
    {
    }

    std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> indices)
    {
        auto mix = [](std::uint64_t z)
        {
            z += 0x9E3779B97F4A7C15ULL;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            return z ^ (z >> 31);
        };
        std::uint64_t state = mix(base);
        for (std::uint64_t index : indices)
            state = mix(state ^ mix(index + 0x632BE59BD9B4E019ULL));
        return state;
    }

} // namespace iac
