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

#ifndef IAC_IAC_GRAPH_HPP
#define IAC_IAC_GRAPH_HPP

#include "iac/system_model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace iac
{
    // One alignment equation span(H_k,a.tx v_a) = span(H_k,b.tx v_b) drawn as an edge.
    // `reference` is the basis-side stream, `aligned` the stream folded onto it, `label` the receiver k.
    struct GraphEdge
    {
        StreamId reference;
        StreamId aligned;
        int label = 0;

        bool operator==(const GraphEdge &) const = default;
    };

    // Vertices are the precoded streams of users 2..K. The partition into connected
    // subgraphs is computed on construction; ids are ordered by each subgraph's smallest vertex.
    class IacGraph
    {
    public:
        IacGraph() = default;
        // Vertices are sorted and deduplicated. Edges touching unknown vertices are kept
        // (validate_graph reports them) but ignored by the partition.
        IacGraph(std::vector<StreamId> vertices, std::vector<GraphEdge> edges);

        // All streams of users 2..K, no edges.
        static IacGraph empty_for(const SystemConfig &config);

        const std::vector<StreamId> &vertices() const noexcept { return vertices_; }
        const std::vector<GraphEdge> &edges() const noexcept { return edges_; }

        std::optional<std::size_t> index_of(StreamId id) const;
        int subgraph_of(StreamId id) const; // -1 for unknown vertices
        int num_subgraphs() const noexcept { return num_subgraphs_; }

        bool operator==(const IacGraph &other) const
        {
            return vertices_ == other.vertices_ && edges_ == other.edges_;
        }

    private:
        std::vector<StreamId> vertices_;
        std::vector<GraphEdge> edges_;
        std::vector<int> partition_;
        int num_subgraphs_ = 0;
    };

    struct AlignmentEquation
    {
        int receiver = 0;
        StreamId reference;
        StreamId aligned;

        bool operator==(const AlignmentEquation &) const = default;
    };

    // The equation set, one entry per graph edge in edge order.
    class AlignmentEquationSet
    {
    public:
        AlignmentEquationSet() = default;
        explicit AlignmentEquationSet(std::vector<AlignmentEquation> equations);
        static AlignmentEquationSet from_graph(const IacGraph &graph);

        const std::vector<AlignmentEquation> &equations() const noexcept { return equations_; }
        std::size_t size() const noexcept { return equations_.size(); }
        std::vector<AlignmentEquation> for_receiver(int receiver) const;

    private:
        std::vector<AlignmentEquation> equations_;
    };

    // Number of non-basis interference streams at receiver k:
    // sum_{j>k} d_j - (M - d_k) for k in [1, k_IAC], 0 otherwise.
    int expected_equation_count(const SystemConfig &config, int receiver);

    struct ReceiverTrace
    {
        int receiver = 0;
        std::vector<StreamId> references; // the accepted reference set
        int restarts = 0;
        int merges = 0;
        int loops_closed = 0;
        std::size_t edges_after = 0;
        int subgraphs_after = 0;
    };

    struct ConstructionTrace
    {
        std::vector<ReceiverTrace> receivers;
        int retry_budget = 0;
        int rollbacks = 0;           // times the construction restarted from receiver 1
        bool optimal_layout = false; // produced by the round-robin k_IAC = 2 construction
        bool fell_back = false;      // optimal construction dead-ended; general construction used
    };

    struct GraphBuild
    {
        IacGraph graph;
        AlignmentEquationSet equations;
        ConstructionTrace trace;
    };

    inline constexpr int kDefaultRetryBudget = 64;
    inline constexpr int kRedrawsBeforeRollback = 8;

    // Randomized receiver-by-receiver construction. For each receiver k <= k_IAC a reference set
    // of size M - d_k is drawn from the streams of users k+1..K, and every other stream of those
    // users is attached to one admissible reference. Dead ends re-draw the reference set; after
    // kRedrawsBeforeRollback consecutive dead ends at a receiver k > 1 the construction restarts from
    // receiver 1. Each receiver may dead-end at most `retry_budget` times in total.
    // Throws InfeasibleConfig or ConstructionExhausted.
    GraphBuild build_graph_general(const SystemConfig &config, std::uint64_t seed,
                                   int retry_budget = kDefaultRetryBudget);

    // Deterministic round-robin layout for tuples reaching 2M DoF (k_IAC = 2). Falls back to
    // build_graph_general (trace.fell_back) if the receiver-2 pass finds no admissible reference.
    GraphBuild build_graph_optimal(const SystemConfig &config, std::uint64_t seed,
                                   int retry_budget = kDefaultRetryBudget);

    enum class ViolationKind
    {
        VertexSetMismatch,
        UnknownEndpoint,
        SameTransmitterEdge,
        LabelOutOfRange,
        DecodedEndpoint,
        DuplicateEdge,
        SecondLoop,
        SameLabelClash,
        RepeatingLoop, // loop word is a power of a shorter one; forces collinear streams
        EquationCount,
    };

    std::string_view to_string(ViolationKind kind);

    struct Violation
    {
        ViolationKind kind;
        std::string detail;
    };

    // Empty iff the graph is a valid IAC graph for `config`.
    std::vector<Violation> validate_graph(const IacGraph &graph, const SystemConfig &config);

    enum class SubgraphKind
    {
        Tree,
        OneLoop,
    };

    std::string_view to_string(SubgraphKind kind);

    // One hop around a loop: follow edge `edge` (receiver `label`) from `from` to `to`.
    struct CycleStep
    {
        std::size_t edge = 0;
        int label = 0;
        StreamId from;
        StreamId to;
    };

    struct Subgraph
    {
        int id = 0;
        std::vector<StreamId> vertices; // sorted
        std::vector<std::size_t> edges; // indices into IacGraph::edges()
        SubgraphKind kind = SubgraphKind::Tree;
        std::vector<CycleStep> cycle; // starts and ends at the smallest cycle vertex; empty for trees
    };

    // Throws MalformedGraph if any subgraph has more than one loop or references unknown vertices.
    std::vector<Subgraph> classify_subgraphs(const IacGraph &graph);

} // namespace iac

#endif
