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

#include "iac/system_model.hpp"

#include "iac/linalg.hpp"

#include <cmath>
#include <numeric>
#include <random>

namespace iac
{
    SystemConfig::SystemConfig(int num_antennas, std::vector<int> dof)
        : num_antennas_(num_antennas), dof_(std::move(dof))
    {
        if (num_antennas_ < 1)
            throw Error(ErrorCode::InvalidConfig, "M must be at least 1");
        if (dof_.empty())
            throw Error(ErrorCode::InvalidConfig, "at least one user is required");
        for (std::size_t j = 0; j < dof_.size(); ++j)
            if (dof_[j] < 1 || dof_[j] > num_antennas_)
                throw Error(ErrorCode::InvalidConfig,
                            "d_" + std::to_string(j + 1) + " = " + std::to_string(dof_[j]) + " outside [1, M]");
    }

    int SystemConfig::dof(int user) const
    {
        if (user < 1 || user > num_users())
            throw std::out_of_range("user index " + std::to_string(user));
        return dof_[static_cast<std::size_t>(user - 1)];
    }

    int SystemConfig::total_dof() const noexcept
    {
        return std::accumulate(dof_.begin(), dof_.end(), 0);
    }

    std::vector<StreamId> SystemConfig::streams_of(int user) const
    {
        std::vector<StreamId> out;
        for (int l = 1; l <= dof(user); ++l)
            out.push_back({user, l});
        return out;
    }

    std::vector<StreamId> SystemConfig::streams_from(int first_user) const
    {
        std::vector<StreamId> out;
        for (int j = std::max(first_user, 1); j <= num_users(); ++j)
            for (int l = 1; l <= dof(j); ++l)
                out.push_back({j, l});
        return out;
    }

    ChannelSet::ChannelSet(int num_users, int num_antennas, std::uint64_t seed, std::vector<CMatrix> matrices)
        : num_users_(num_users), num_antennas_(num_antennas), seed_(seed), matrices_(std::move(matrices))
    {
        if (num_users_ < 1 || num_antennas_ < 1)
            throw Error(ErrorCode::Format, "channel set needs K >= 1 and M >= 1");
        if (matrices_.size() != static_cast<std::size_t>(num_users_) * static_cast<std::size_t>(num_users_))
            throw Error(ErrorCode::Format, "channel set needs K*K matrices");
        for (const CMatrix &h : matrices_)
        {
            if (h.rows() != num_antennas_ || h.cols() != num_antennas_)
                throw Error(ErrorCode::Format, "channel matrix is not M x M");
            if (!h.allFinite())
                throw Error(ErrorCode::Format, "channel matrix has non-finite entries");
        }
    }

    const CMatrix &ChannelSet::h(int rx, int tx) const
    {
        if (rx < 1 || rx > num_users_ || tx < 1 || tx > num_users_)
            throw std::out_of_range("channel index (" + std::to_string(rx) + "," + std::to_string(tx) + ")");
        return matrices_[static_cast<std::size_t>((rx - 1) * num_users_ + (tx - 1))];
    }

    ChannelSet ChannelSet::with_matrix(int rx, int tx, CMatrix matrix) const
    {
        (void)h(rx, tx);
        std::vector<CMatrix> copy = matrices_;
        copy[static_cast<std::size_t>((rx - 1) * num_users_ + (tx - 1))] = std::move(matrix);
        return ChannelSet(num_users_, num_antennas_, seed_, std::move(copy));
    }

    ChannelSet generate_channels(const SystemConfig &config, std::uint64_t seed)
    {
        const int k_users = config.num_users();
        const int m = config.num_antennas();
        std::mt19937_64 rng(seed);

        std::vector<CMatrix> matrices;
        matrices.reserve(static_cast<std::size_t>(k_users * k_users));
        for (int rx = 1; rx <= k_users; ++rx)
        {
            for (int tx = 1; tx <= k_users; ++tx)
            {
                CMatrix h(m, m);
                bool accepted = false;
                for (int attempt = 0; attempt < kMaxChannelRedraws && !accepted; ++attempt)
                {
                    // row-major fill so the draw order matches the export layout
                    for (int r = 0; r < m; ++r)
                        for (int c = 0; c < m; ++c)
                            h(r, c) = linalg::complex_normal(rng);
                    accepted = linalg::condition_ratio(h) > linalg::kConditioningFloor;
                }
                if (!accepted)
                    throw Error(ErrorCode::ChannelGeneration,
                                "H_" + std::to_string(rx) + std::to_string(tx) + " stayed singular after re-draws");
                matrices.push_back(std::move(h));
            }
        }
        return ChannelSet(k_users, m, seed, std::move(matrices));
    }

    int compute_k_iac(const SystemConfig &config)
    {
        const int k_users = config.num_users();
        int tail = 0;
        // walk back from K; the first k (from the front) whose tail fits is k*
        int k_star = k_users;
        for (int k = k_users; k >= 1; --k)
        {
            tail += config.dof(k);
            if (tail > config.num_antennas())
                break;
            k_star = k;
        }
        return k_star - 1;
    }

    int compute_overhead(const SystemConfig &config)
    {
        const int k_iac = compute_k_iac(config);
        int packets = 0;
        for (int j = 1; j <= k_iac; ++j)
            packets += (config.num_users() - j) * config.dof(j);
        return packets;
    }

    std::vector<int> cancelled_users(const SystemConfig &config, int receiver)
    {
        const int k_iac = compute_k_iac(config);
        const int last = receiver <= k_iac ? receiver - 1 : k_iac;
        std::vector<int> users;
        for (int j = 1; j <= last; ++j)
            users.push_back(j);
        return users;
    }

    std::vector<int> alignment_interferers(const SystemConfig &config, int receiver)
    {
        const int k_iac = compute_k_iac(config);
        const int first = receiver <= k_iac ? receiver + 1 : k_iac + 1;
        std::vector<int> users;
        for (int j = first; j <= config.num_users(); ++j)
            if (j != receiver)
                users.push_back(j);
        return users;
    }

} // namespace iac
