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

#ifndef IAC_SYSTEM_MODEL_HPP
#define IAC_SYSTEM_MODEL_HPP

#include "iac/common.hpp"

#include <cstdint>
#include <vector>

namespace iac
{
    // K-user interference channel with M antennas per node and d_j streams per user.
    // Users are indexed 1..K in decoding order; the input order is preserved.
    class SystemConfig
    {
    public:
        // Throws InvalidConfig unless M >= 1, K >= 1 and 1 <= d_j <= M for every user.
        SystemConfig(int num_antennas, std::vector<int> dof);

        int num_users() const noexcept { return static_cast<int>(dof_.size()); }
        int num_antennas() const noexcept { return num_antennas_; }
        const std::vector<int> &dof() const noexcept { return dof_; }
        int dof(int user) const; // 1-based
        int total_dof() const noexcept;

        // Streams of one user, or of users first..K, in (tx, stream) order
        std::vector<StreamId> streams_of(int user) const;
        std::vector<StreamId> streams_from(int first_user) const;

        bool operator==(const SystemConfig &) const = default;

    private:
        int num_antennas_;
        std::vector<int> dof_;
    };

    // K x K grid of M x M complex channel matrices; h(k, j) maps transmitter j to receiver k (1-based).
    class ChannelSet
    {
    public:
        // `matrices` is row-major over (receiver, transmitter). Throws Format on shape or non-finite entries.
        ChannelSet(int num_users, int num_antennas, std::uint64_t seed, std::vector<CMatrix> matrices);

        int num_users() const noexcept { return num_users_; }
        int num_antennas() const noexcept { return num_antennas_; }
        std::uint64_t seed() const noexcept { return seed_; }

        const CMatrix &h(int rx, int tx) const;
        ChannelSet with_matrix(int rx, int tx, CMatrix matrix) const;

        const std::vector<CMatrix> &matrices() const noexcept { return matrices_; }

    private:
        int num_users_;
        int num_antennas_;
        std::uint64_t seed_;
        std::vector<CMatrix> matrices_;
    };

    inline constexpr int kMaxChannelRedraws = 32;

    // i.i.d. CN(0,1) entries, deterministic in (config, seed). Each matrix is re-drawn until its
    // singular value ratio exceeds the conditioning floor; throws ChannelGeneration if the budget runs out.
    ChannelSet generate_channels(const SystemConfig &config, std::uint64_t seed);

    // Index of the last receiver whose interference has to be aligned; 0 when every receiver can
    // separate all of its remaining streams directly.
    int compute_k_iac(const SystemConfig &config);

    // Decoded packets forwarded over the backhaul: sum over j <= k_IAC of (K - j) * d_j.
    int compute_overhead(const SystemConfig &config);

    // Users whose decoded packets receiver k subtracts before decoding.
    std::vector<int> cancelled_users(const SystemConfig &config, int receiver);

    // Users whose interference receiver k must suppress spatially (alignment-side interference).
    std::vector<int> alignment_interferers(const SystemConfig &config, int receiver);

} // namespace iac

#endif
