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

#include "iac/solver.hpp"

#include "iac/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>

namespace iac
{
    namespace
    {
        constexpr double kPrecoderRankFloor = 1e-8;
        constexpr double kCollinearTol = 1e-6; // 1 - |cos| below this counts as the same direction

        std::string channel_name(int rx, int tx)
        {
            return "H_" + std::to_string(rx) + "," + std::to_string(tx);
        }

        // Breadth-first fill of a connected subgraph from one known vertex.
        StreamSolution propagate(const IacGraph &graph, const Subgraph &sub, const ChannelSet &channels,
                                 StreamId root, const CVector &root_vector)
        {
            std::map<StreamId, std::vector<std::size_t>> incident;
            for (std::size_t i : sub.edges)
            {
                incident[graph.edges()[i].reference].push_back(i);
                incident[graph.edges()[i].aligned].push_back(i);
            }

            StreamSolution out;
            out[root] = root_vector;
            std::deque<StreamId> queue{root};
            while (!queue.empty())
            {
                const StreamId u = queue.front();
                queue.pop_front();
                for (std::size_t i : incident[u])
                {
                    const GraphEdge &e = graph.edges()[i];
                    const StreamId other = e.reference == u ? e.aligned : e.reference;
                    if (out.contains(other))
                        continue;
                    CVector x = transfer_between(channels, e.label, u, other) * out[u];
                    out[other] = x / x.norm();
                    queue.push_back(other);
                }
            }
            if (out.size() != sub.vertices.size())
                throw Error(ErrorCode::MalformedGraph,
                            "subgraph " + std::to_string(sub.id) + " is not connected through its edges");
            return out;
        }

        // Largest-magnitude entry made real and positive, so eigenvectors do not carry solver-dependent phase.
        CVector canonical_phase(const CVector &v)
        {
            Eigen::Index best = 0;
            v.cwiseAbs().maxCoeff(&best);
            return v * (std::abs(v(best)) / v(best));
        }

        using TakenVectors = std::map<int, std::vector<CVector>>;

        bool collides(const StreamSolution &sol, const TakenVectors &taken)
        {
            for (const auto &[id, vec] : sol)
            {
                const auto it = taken.find(id.tx);
                if (it == taken.end())
                    continue;
                for (const CVector &w : it->second)
                {
                    const double overlap = std::abs(vec.dot(w)) / (vec.norm() * w.norm());
                    if (overlap > 1.0 - kCollinearTol)
                        return true;
                }
            }
            return false;
        }

        // Loops that repeat the transmitter/label pattern of an earlier loop share its loop matrix, so
        // the first eigenpair would hand one transmitter the same direction twice. Such loops take the
        // next eigenpair whose propagated vectors avoid everything in `taken`.
        std::pair<StreamSolution, LoopMatrix> solve_loop(const IacGraph &graph, const Subgraph &sub,
                                                         const ChannelSet &channels, const SolverOptions &options,
                                                         const TakenVectors &taken = {})
        {
            if (sub.kind != SubgraphKind::OneLoop || sub.cycle.empty())
                throw std::invalid_argument("solve_loop_subgraph: subgraph " + std::to_string(sub.id) +
                                            " has no loop");
            LoopMatrix loop = build_loop_matrix(sub.cycle, channels);
            Eigen::ComplexEigenSolver<CMatrix> eig(loop.f);
            if (eig.info() != Eigen::Success)
                throw Error(ErrorCode::DegenerateEigenproblem,
                            "eigen-decomposition failed for subgraph " + std::to_string(sub.id));

            const Eigen::VectorXcd &lambda = eig.eigenvalues();
            std::vector<Eigen::Index> order(static_cast<std::size_t>(lambda.size()));
            std::iota(order.begin(), order.end(), Eigen::Index{0});
            const bool largest = options.eigen_choice == EigenChoice::LargestModulus;
            std::stable_sort(order.begin(), order.end(),
                             [&](Eigen::Index a, Eigen::Index b)
                             {
                                 const double ma = std::abs(lambda(a));
                                 const double mb = std::abs(lambda(b));
                                 if (ma != mb)
                                     return largest ? ma > mb : ma < mb;
                                 if (lambda(a).real() != lambda(b).real())
                                     return lambda(a).real() > lambda(b).real();
                                 return lambda(a).imag() > lambda(b).imag();
                             });

            const double scale = loop.f.norm();
            std::optional<StreamSolution> fallback;
            for (Eigen::Index i : order)
            {
                CVector v = eig.eigenvectors().col(i);
                if (v.norm() == 0.0)
                    continue;
                v /= v.norm();
                if ((loop.f * v - lambda(i) * v).norm() >= options.eigen_residual_tol * scale)
                    continue;
                const CVector anchor = canonical_phase(v) * options.anchor_phase;
                StreamSolution sol = propagate(graph, sub, channels, sub.cycle.front().from, anchor);
                if (!collides(sol, taken))
                    return {std::move(sol), std::move(loop)};
                if (!fallback)
                    fallback = std::move(sol);
            }
            // every eigenpair collides; the precoder rank check reports it
            if (fallback)
                return {std::move(*fallback), std::move(loop)};
            throw Error(ErrorCode::DegenerateEigenproblem,
                        "no eigenpair of the loop matrix of subgraph " + std::to_string(sub.id) +
                            " meets the residual bound");
        }
    } // namespace

    CMatrix edge_transfer(const GraphEdge &edge, const ChannelSet &channels)
    {
        return transfer_between(channels, edge.label, edge.reference, edge.aligned);
    }

    CMatrix transfer_between(const ChannelSet &channels, int receiver, StreamId from, StreamId to)
    {
        return linalg::checked_solve(channels.h(receiver, to.tx), channels.h(receiver, from.tx),
                                     channel_name(receiver, to.tx));
    }

    StreamSolution solve_tree_subgraph(const IacGraph &graph, const Subgraph &subgraph, const ChannelSet &channels,
                                       std::uint64_t seed)
    {
        if (subgraph.kind != SubgraphKind::Tree || subgraph.vertices.empty())
            throw std::invalid_argument("solve_tree_subgraph: subgraph " + std::to_string(subgraph.id) +
                                        " is not a tree");
        std::mt19937_64 rng(seed);
        const CVector root = linalg::random_unit_vector(channels.num_antennas(), rng);
        return propagate(graph, subgraph, channels, subgraph.vertices.front(), root);
    }

    LoopMatrix build_loop_matrix(std::span<const CycleStep> cycle, const ChannelSet &channels)
    {
        const Eigen::Index m = channels.num_antennas();
        LoopMatrix out{CMatrix::Identity(m, m), std::vector<CycleStep>(cycle.begin(), cycle.end())};
        for (const CycleStep &step : cycle)
            out.f = transfer_between(channels, step.label, step.from, step.to) * out.f;
        if (!out.f.allFinite())
            throw Error(ErrorCode::SingularChannel, "loop matrix has non-finite entries");
        return out;
    }

    StreamSolution solve_loop_subgraph(const IacGraph &graph, const Subgraph &subgraph, const ChannelSet &channels,
                                       const SolverOptions &options)
    {
        return solve_loop(graph, subgraph, channels, options).first;
    }

    CMatrix solve_first_user(const ChannelSet &channels, std::span<const CVector> interference_at_rx1, int d1,
                             double rank_tol)
    {
        const Eigen::Index m = channels.num_antennas();
        const CMatrix stack = linalg::stack_columns(interference_at_rx1, m);
        const int rank = linalg::numerical_rank(stack, rank_tol);
        if (rank > m - d1)
            throw Error(ErrorCode::DimensionOverflow, "interference at receiver 1 has rank " + std::to_string(rank) +
                                                          ", only " + std::to_string(m - d1) + " dimensions free");
        // QR of the complement projector: the basis then depends on the interference span only,
        // not on the scaling or phase of the individual interference vectors
        const CMatrix complement = linalg::orthonormal_complement(stack, m, rank_tol);
        const CMatrix projector = complement * complement.adjoint();
        const CMatrix q = Eigen::HouseholderQR<CMatrix>(projector).householderQ();
        CMatrix v1 = linalg::checked_solve(channels.h(1, 1), q.leftCols(d1), channel_name(1, 1));
        v1.colwise().normalize();
        return v1;
    }

    PrecoderSet assemble_precoders(std::span<const StreamSolution> solutions, const CMatrix &v1,
                                   const SystemConfig &config)
    {
        const int m = config.num_antennas();
        const int k_users = config.num_users();
        if (v1.rows() != m || v1.cols() != config.dof(1))
            throw std::invalid_argument("assemble_precoders: V_1 has the wrong shape");

        PrecoderSet out;
        out.v.reserve(static_cast<std::size_t>(k_users));
        out.v.push_back(v1);
        std::vector<std::vector<bool>> filled(static_cast<std::size_t>(k_users));
        for (int j = 2; j <= k_users; ++j)
        {
            out.v.emplace_back(CMatrix::Zero(m, config.dof(j)));
            filled[static_cast<std::size_t>(j - 1)].assign(static_cast<std::size_t>(config.dof(j)), false);
        }

        for (const StreamSolution &sol : solutions)
            for (const auto &[id, vec] : sol)
            {
                if (id.tx < 2 || id.tx > k_users || id.stream < 1 || id.stream > config.dof(id.tx))
                    throw std::invalid_argument("assemble_precoders: unknown stream " + to_string(id));
                if (vec.size() != m || vec.norm() == 0.0)
                    throw std::invalid_argument("assemble_precoders: bad vector for " + to_string(id));
                auto &row = filled[static_cast<std::size_t>(id.tx - 1)];
                std::vector<bool>::reference slot = row[static_cast<std::size_t>(id.stream - 1)];
                if (slot)
                    throw std::invalid_argument("assemble_precoders: " + to_string(id) + " assigned twice");
                slot = true;
                out.v[static_cast<std::size_t>(id.tx - 1)].col(id.stream - 1) = vec / vec.norm();
            }

        for (int j = 2; j <= k_users; ++j)
            for (int l = 1; l <= config.dof(j); ++l)
                if (!filled[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(l - 1)])
                    throw std::invalid_argument("assemble_precoders: " + to_string(StreamId{j, l}) +
                                                " was never solved");

        for (int j = 1; j <= k_users; ++j)
        {
            const double ratio = linalg::condition_ratio(out.of(j));
            if (!(ratio > kPrecoderRankFloor))
                throw Error(ErrorCode::RankDeficientPrecoder,
                            "V_" + std::to_string(j) + " has singular value ratio " + std::to_string(ratio));
        }
        return out;
    }

    std::vector<CVector> interference_vectors(const ChannelSet &channels, const PrecoderSet &precoders,
                                              const SystemConfig &config, int receiver)
    {
        std::vector<CVector> out;
        for (int j : alignment_interferers(config, receiver))
            for (Eigen::Index l = 0; l < precoders.of(j).cols(); ++l)
                out.emplace_back(channels.h(receiver, j) * precoders.of(j).col(l));
        return out;
    }

    ReceiverSet design_receivers(const ChannelSet &channels, const PrecoderSet &precoders, const SystemConfig &config,
                                 double rank_tol)
    {
        const Eigen::Index m = config.num_antennas();
        ReceiverSet out;
        for (int k = 1; k <= config.num_users(); ++k)
        {
            const int dk = config.dof(k);
            const std::vector<CVector> interference = interference_vectors(channels, precoders, config, k);
            const CMatrix null_basis =
                linalg::orthonormal_complement(linalg::stack_columns(interference, m), m, rank_tol);
            if (null_basis.cols() < dk)
                throw Error(ErrorCode::DimensionOverflow,
                            "receiver " + std::to_string(k) + " has " + std::to_string(null_basis.cols()) +
                                " interference-free dimensions for " + std::to_string(dk) + " streams");
            if (null_basis.cols() == dk)
            {
                out.u.push_back(null_basis);
                continue;
            }
            const CMatrix projected = null_basis * (null_basis.adjoint() * channels.h(k, k) * precoders.of(k));
            CMatrix u = linalg::orthonormal_range(projected, rank_tol);
            if (u.cols() < dk)
                throw Error(ErrorCode::SingularEffectiveChannel,
                            "desired signal at receiver " + std::to_string(k) + " loses rank in the null space");
            out.u.push_back(std::move(u));
        }
        return out;
    }

    Transceivers solve_transceivers(const SystemConfig &config, const ChannelSet &channels, const IacGraph &graph,
                                    std::uint64_t seed, const SolverOptions &options)
    {
        Transceivers out;
        out.subgraphs = classify_subgraphs(graph);

        std::vector<StreamSolution> solutions;
        TakenVectors taken;
        for (const Subgraph &sub : out.subgraphs)
        {
            if (sub.kind == SubgraphKind::Tree)
            {
                solutions.push_back(
                    solve_tree_subgraph(graph, sub, channels, derive_seed(seed, {static_cast<std::uint64_t>(sub.id)})));
                continue;
            }
            auto [sol, loop] = solve_loop(graph, sub, channels, options, taken);
            for (const auto &[id, vec] : sol)
                taken[id.tx].push_back(vec);
            solutions.push_back(std::move(sol));
            out.loops.emplace(sub.id, std::move(loop));
        }

        std::vector<CVector> at_rx1;
        for (const StreamSolution &sol : solutions)
            for (const auto &[id, vec] : sol)
                at_rx1.emplace_back(channels.h(1, id.tx) * vec);
        const CMatrix v1 = solve_first_user(channels, at_rx1, config.dof(1), options.rank_tol);

        out.precoders = assemble_precoders(solutions, v1, config);
        out.receivers = design_receivers(channels, out.precoders, config, options.rank_tol);
        return out;
    }

} // namespace iac
