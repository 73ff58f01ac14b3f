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

#ifndef IAC_COMMON_HPP
#define IAC_COMMON_HPP

#include <Eigen/Dense>

#include <compare>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace iac
{
    using cx = std::complex<double>;
    using CMatrix = Eigen::MatrixXcd;
    using CVector = Eigen::VectorXcd;

    // One precoded data stream: stream `stream` of transmitter `tx`, both 1-based.
    struct StreamId
    {
        int tx = 0;
        int stream = 0;

        auto operator<=>(const StreamId &) const = default;
    };

    // "v_3_2" for transmitter 3, stream 2
    std::string to_string(StreamId id);

    enum class ErrorCode
    {
        InvalidConfig,
        InfeasibleConfig,
        ChannelGeneration,
        ConstructionExhausted,
        MalformedGraph,
        SingularChannel,
        DegenerateEigenproblem,
        DimensionOverflow,
        RankDeficientPrecoder,
        SingularEffectiveChannel,
        MissingPoint,
        ZeroVector,
        Format,
    };

    std::string_view to_string(ErrorCode code);

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCode code, const std::string &message);
        ErrorCode code() const noexcept { return code_; }

    private:
        ErrorCode code_;
    };

    // Raised by the randomized graph construction when every restart for a receiver dead-ends.
    class ConstructionExhausted : public Error
    {
    public:
        ConstructionExhausted(int receiver, int restarts);
        int receiver() const noexcept { return receiver_; }
        int restarts() const noexcept { return restarts_; }

    private:
        int receiver_;
        int restarts_;
    };

    // Mixes a base seed with a list of indices into an independent 64-bit stream seed (splitmix64 finalizer).
    std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> indices);

} // namespace iac

#endif
