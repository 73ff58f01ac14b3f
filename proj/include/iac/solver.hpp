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

#ifndef IAC_SOLVER_HPP
#define IAC_SOLVER_HPP

#include "iac/iac_graph.hpp"
#include "iac/system_model.hpp"

#include <map>
#include <span>
#include <vector>

namespace iac
{
    // V_j for every user, shape M x d_j, unit-norm columns.
    struct PrecoderSet
    {
        std::vector<CMatrix> v;

        const CMatrix &of(int user) const { return v.at(static_cast<std::size_t>(user - 1)); }
        CVector column(StreamId id) const { return of(id.tx).col(id.stream - 1); }
    };

    // U_k for every receiver, shape M x d_k, orthonormal columns.
    struct ReceiverSet
    {
        std::vector<CMatrix> u;

        const CMatrix &of(int user) const { return u.at(static_cast<std::size_t>(user - 1)); }
    };

    struct LoopMatrix
    {
        CMatrix f;
        std::vector<CycleStep> cycle;
    };

    enum class EigenChoice
    {
        LargestModulus,
        SmallestModulus,
    };

    struct SolverOptions
    {
        EigenChoice eigen_choice = EigenChoice::LargestModulus;
        // Multiplies every loop anchor by this unit phase; spans and rates must not change.
        cx anchor_phase{1.0, 0.0};
        double eigen_residual_tol = 1e-8; // relative to ||F||
        double rank_tol = 1e-8;
    };

    using StreamSolution = std::map<StreamId, CVector>;

    // H[k][aligned.tx]^-1 H[k][reference.tx]: maps the reference direction onto the aligned one.
    CMatrix edge_transfer(const GraphEdge &edge, const ChannelSet &channels);

    // Same map for an arbitrary traversal direction at receiver k.
    CMatrix transfer_between(const ChannelSet &channels, int receiver, StreamId from, StreamId to);

    // Seeded random unit vector at the smallest vertex, then breadth-first propagation.
    StreamSolution solve_tree_subgraph(const IacGraph &graph, const Subgraph &subgraph, const ChannelSet &channels,
                                       std::uint64_t seed);

    // F = T_n ... T_1 around the cycle, so span(F v_anchor) = span(v_anchor) closes the loop.
    LoopMatrix build_loop_matrix(std::span<const CycleStep> cycle, const ChannelSet &channels);

    // Anchor = eigenvector of the loop matrix, every other vertex by propagation from it.
    StreamSolution solve_loop_subgraph(const IacGraph &graph, const Subgraph &subgraph, const ChannelSet &channels,
                                       const SolverOptions &options = {});

    // V_1 = H_11^-1 B(:, 1..d_1) where B spans the complement of the interference at receiver 1.
    CMatrix solve_first_user(const ChannelSet &channels, std::span<const CVector> interference_at_rx1, int d1,
                             double rank_tol = 1e-8);

    // Throws std::invalid_argument on duplicate or missing streams, RankDeficientPrecoder on rank loss.
    PrecoderSet assemble_precoders(std::span<const StreamSolution> solutions, const CMatrix &v1,
                                   const SystemConfig &config);

    // H_kj v_jl for every stream receiver k has to zero-force (cancelled users excluded).
    std::vector<CVector> interference_vectors(const ChannelSet &channels, const PrecoderSet &precoders,
                                              const SystemConfig &config, int receiver);

    // U_k spans the complement of receiver k's post-cancellation interference. When the complement is
    // larger than d_k, U_k is the orthonormal range of the desired signal projected onto it.
    ReceiverSet design_receivers(const ChannelSet &channels, const PrecoderSet &precoders, const SystemConfig &config,
                                 double rank_tol = 1e-8);

    struct Transceivers
    {
        PrecoderSet precoders;
        ReceiverSet receivers;
        std::vector<Subgraph> subgraphs;
        std::map<int, LoopMatrix> loops; // by subgraph id
    };

    // Full closed-form solve. Per-subgraph tree seeds are derived from `seed` and the subgraph id.
    Transceivers solve_transceivers(const SystemConfig &config, const ChannelSet &channels, const IacGraph &graph,
                                    std::uint64_t seed, const SolverOptions &options = {});

} // namespace iac

#endif
