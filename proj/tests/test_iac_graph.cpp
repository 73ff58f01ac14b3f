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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

#include "iac/feasibility.hpp"
#include "iac/iac_graph.hpp"

#include <algorithm>
#include <map>

using namespace iac;

namespace
{
    std::map<int, int> edges_per_label(const IacGraph &g)
    {
        std::map<int, int> out;
        for (const GraphEdge &e : g.edges())
            ++out[e.label];
        return out;
    }

    bool has_violation(const std::vector<Violation> &vs, ViolationKind kind)
    {
        return std::any_of(vs.begin(), vs.end(), [&](const Violation &v) { return v.kind == kind; });
    }

    // Remaining interference streams at receiver k that must fold onto a basis, counted directly.
    int remaining_interference(int m, const std::vector<int> &d, int k)
    {
        int streams = 0;
        for (std::size_t j = static_cast<std::size_t>(k); j < d.size(); ++j)
            streams += d[j];
        return streams - (m - d[static_cast<std::size_t>(k - 1)]);
    }
}

TEST_CASE("eleven-stream tuple: 8 vertices, 8 edges split (5, 2, 1)")
{
    const SystemConfig c = fixtures::eleven_stream_config();
    for (std::uint64_t seed = 0; seed < 100; ++seed)
    {
        const GraphBuild b = build_graph_general(c, seed);
        CHECK(b.graph.vertices().size() == 8);
        CHECK(b.graph.edges().size() == 8);
        CHECK(edges_per_label(b.graph) == std::map<int, int>{{1, 5}, {2, 2}, {3, 1}});
        CHECK(validate_graph(b.graph, c).empty());
        CHECK(b.equations.size() == b.graph.edges().size());
        CHECK(b.trace.receivers.size() == 3);
    }
}

TEST_CASE("no alignment needed gives an edgeless graph")
{
    const SystemConfig c(6, {2, 2, 2});
    const GraphBuild b = build_graph_general(c, 3);
    CHECK(b.graph.vertices().size() == 4);
    CHECK(b.graph.edges().empty());
    CHECK(b.graph.num_subgraphs() == 4);
    CHECK(validate_graph(b.graph, c).empty());
    for (const Subgraph &s : classify_subgraphs(b.graph))
        CHECK(s.kind == SubgraphKind::Tree);
}

TEST_CASE("equation counts per receiver")
{
    const SystemConfig c(4, {2, 2, 2, 2});
    CHECK(compute_k_iac(c) == 2);
    CHECK(expected_equation_count(c, 1) == 4);
    CHECK(expected_equation_count(c, 2) == 2);
    CHECK(expected_equation_count(c, 3) == 0);
    CHECK(remaining_interference(4, {2, 2, 2, 2}, 1) == 4);
    CHECK(remaining_interference(4, {2, 2, 2, 2}, 2) == 2);

    const GraphBuild b = build_graph_general(c, 9);
    CHECK(edges_per_label(b.graph) == std::map<int, int>{{1, 4}, {2, 2}});
    CHECK(b.graph.vertices().size() == 6);
    CHECK(b.equations.for_receiver(1).size() == 4);
    CHECK(b.equations.for_receiver(2).size() == 2);
    CHECK(b.equations.for_receiver(3).empty());
}

TEST_CASE("twelve-stream tuple: round-robin layout")
{
    const SystemConfig c = fixtures::twelve_stream_config();
    for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
        const GraphBuild b = build_graph_optimal(c, seed);
        CHECK(b.trace.optimal_layout);
        CHECK_FALSE(b.trace.fell_back);
        REQUIRE(b.trace.receivers.size() == 2);

        const ReceiverTrace &first = b.trace.receivers[0];
        CHECK(first.edges_after == 6);
        CHECK(first.subgraphs_after == 3);
        CHECK(first.references == c.streams_of(2));

        const ReceiverTrace &second = b.trace.receivers[1];
        CHECK(second.edges_after == 9);
        CHECK(second.merges == 0);
        CHECK(second.loops_closed == 3);

        CHECK(b.graph.edges().size() == 6 + 3); // M + d_2
        CHECK(validate_graph(b.graph, c).empty());
        const auto subs = classify_subgraphs(b.graph);
        CHECK(subs.size() == 3);
        for (const Subgraph &s : subs)
            CHECK(s.kind == SubgraphKind::OneLoop);
    }
}

TEST_CASE("round-robin wiring at receiver 1")
{
    const GraphBuild b = build_graph_optimal(fixtures::twelve_stream_config(), 0);
    // streams of users 3..5 in order, dealt to v_2_1, v_2_2, v_2_3, v_2_1, ...
    const std::vector<StreamId> aligned{{3, 1}, {3, 2}, {4, 1}, {4, 2}, {5, 1}, {5, 2}};
    for (std::size_t i = 0; i < aligned.size(); ++i)
    {
        const GraphEdge &e = b.graph.edges()[i];
        CHECK(e.label == 1);
        CHECK(e.aligned == aligned[i]);
        CHECK(e.reference == StreamId{2, static_cast<int>(i % 3) + 1});
    }
}

TEST_CASE("smallest 2M tuple: one tree after receiver 1, one loop after receiver 2")
{
    const SystemConfig c(2, {1, 1, 1, 1});
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        const GraphBuild b = build_graph_optimal(c, seed);
        REQUIRE(b.trace.receivers.size() == 2);
        CHECK(b.trace.receivers[0].edges_after == 2);
        CHECK(b.trace.receivers[0].subgraphs_after == 1);
        CHECK(b.trace.receivers[1].edges_after == 3);
        CHECK(b.trace.receivers[1].loops_closed == 1);
        CHECK(validate_graph(b.graph, c).empty());
        const auto subs = classify_subgraphs(b.graph);
        REQUIRE(subs.size() == 1);
        CHECK(subs[0].vertices.size() == 3);
        CHECK(subs[0].kind == SubgraphKind::OneLoop);
    }
}

TEST_CASE("optimal construction rejects other tuples")
{
    CHECK_THROWS_AS(build_graph_optimal(fixtures::eleven_stream_config(), 0), Error);
}

TEST_CASE("infeasible tuples are rejected before construction")
{
    try
    {
        build_graph_general(SystemConfig(2, {2, 2, 2}), 0);
        FAIL("expected InfeasibleConfig");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::InfeasibleConfig);
    }
    CHECK_THROWS_AS(build_graph_general(fixtures::eleven_stream_config(), 0, -1), std::invalid_argument);
}

TEST_CASE("exhaustion error carries the receiver")
{
    const ConstructionExhausted e(3, 64);
    CHECK(e.receiver() == 3);
    CHECK(e.restarts() == 64);
    CHECK(e.code() == ErrorCode::ConstructionExhausted);
}

TEST_CASE("construction is deterministic in the seed")
{
    const SystemConfig c = fixtures::eleven_stream_config();
    CHECK(build_graph_general(c, 42).graph == build_graph_general(c, 42).graph);
    bool any_difference = false;
    for (std::uint64_t s = 1; s < 10; ++s)
        any_difference |= !(build_graph_general(c, s).graph == build_graph_general(c, 0).graph);
    CHECK(any_difference);
}

TEST_CASE("both worked tuples build on 100 seeds within the default budget")
{
    for (const SystemConfig &c : {fixtures::eleven_stream_config(), fixtures::twelve_stream_config()})
        for (std::uint64_t seed = 0; seed < 100; ++seed)
        {
            GraphBuild b;
            CHECK_NOTHROW(b = build_graph_general(c, seed));
            for (const ReceiverTrace &rt : b.trace.receivers)
                CHECK(rt.restarts <= kDefaultRetryBudget);
        }
}

TEST_CASE("random feasible tuples: invariants of the built graph")
{
    std::mt19937_64 rng(77);
    for (int it = 0; it < 150; ++it)
    {
        const auto [m, d] = oracle::random_feasible(rng, 6, 8);
        const SystemConfig c(m, d);
        const GraphBuild b = build_graph_general(c, rng());
        CHECK(validate_graph(b.graph, c).empty());

        int expected_edges = 0;
        for (int k = 1; k <= compute_k_iac(c); ++k)
            expected_edges += remaining_interference(m, d, k);
        CHECK(static_cast<int>(b.graph.edges().size()) == expected_edges);

        const auto subs = classify_subgraphs(b.graph);
        const auto loops = std::count_if(subs.begin(), subs.end(),
                                         [](const Subgraph &s) { return s.kind == SubgraphKind::OneLoop; });
        const auto forest_edges = static_cast<long>(b.graph.vertices().size()) - static_cast<long>(subs.size());
        CHECK(loops == static_cast<long>(b.graph.edges().size()) - forest_edges);
        for (const Subgraph &s : subs)
            CHECK(s.edges.size() <= s.vertices.size());
    }
}

TEST_CASE("hand-built eleven-stream graph is valid and has one loop")
{
    const IacGraph g = fixtures::eleven_stream_graph();
    const SystemConfig c = fixtures::eleven_stream_config();
    CHECK(validate_graph(g, c).empty());
    CHECK(g.num_subgraphs() == 1);

    const auto subs = classify_subgraphs(g);
    REQUIRE(subs.size() == 1);
    CHECK(subs[0].kind == SubgraphKind::OneLoop);
    REQUIRE(subs[0].cycle.size() == 2);
    CHECK(subs[0].cycle[0].edge == 4);
    CHECK(subs[0].cycle[0].label == 1);
    CHECK(subs[0].cycle[0].from == StreamId{4, 2});
    CHECK(subs[0].cycle[0].to == StreamId{5, 1});
    CHECK(subs[0].cycle[1].edge == 7);
    CHECK(subs[0].cycle[1].label == 3);
    CHECK(subs[0].cycle[1].to == StreamId{4, 2});
}

TEST_CASE("cycle extraction on a longer loop with a tail")
{
    // square v_2_1 - v_3_1 - v_4_1 - v_5_1 - v_2_1 with a pendant v_3_2
    const IacGraph g({{2, 1}, {3, 1}, {3, 2}, {4, 1}, {5, 1}},
                     {{{2, 1}, {3, 1}, 1}, {{3, 1}, {4, 1}, 1}, {{4, 1}, {5, 1}, 2}, {{5, 1}, {2, 1}, 1},
                      {{4, 1}, {3, 2}, 2}});
    const auto subs = classify_subgraphs(g);
    REQUIRE(subs.size() == 1);
    REQUIRE(subs[0].cycle.size() == 4);
    CHECK(subs[0].cycle.front().from == StreamId{2, 1});
    CHECK(subs[0].cycle.back().to == StreamId{2, 1});
    for (std::size_t i = 1; i < 4; ++i)
        CHECK(subs[0].cycle[i].from == subs[0].cycle[i - 1].to);
    for (const CycleStep &s : subs[0].cycle)
        CHECK(s.edge != 4);
}

TEST_CASE("classification of trees and malformed subgraphs")
{
    const IacGraph single({{2, 1}}, {});
    const auto subs = classify_subgraphs(single);
    REQUIRE(subs.size() == 1);
    CHECK(subs[0].kind == SubgraphKind::Tree);
    CHECK(subs[0].edges.empty());

    const IacGraph doubled({{2, 1}, {3, 1}}, {{{2, 1}, {3, 1}, 1}, {{2, 1}, {3, 1}, 2}, {{3, 1}, {2, 1}, 3}});
    CHECK_THROWS_AS(classify_subgraphs(doubled), Error);

    const IacGraph dangling({{2, 1}}, {{{2, 1}, {9, 9}, 1}});
    CHECK_THROWS_AS(classify_subgraphs(dangling), Error);
}

TEST_CASE("validation catches each kind of defect")
{
    const SystemConfig c = fixtures::eleven_stream_config();
    const IacGraph good = fixtures::eleven_stream_graph();
    auto with_extra = [&](GraphEdge e)
    {
        std::vector<GraphEdge> edges = good.edges();
        edges.push_back(e);
        return IacGraph(good.vertices(), edges);
    };

    CHECK(has_violation(validate_graph(with_extra({{3, 3}, {5, 2}, 2}), c), ViolationKind::SecondLoop));
    CHECK(has_violation(validate_graph(with_extra({{3, 3}, {5, 2}, 2}), c), ViolationKind::EquationCount));
    CHECK(has_violation(validate_graph(with_extra({{3, 1}, {3, 2}, 1}), c), ViolationKind::SameTransmitterEdge));
    CHECK(has_violation(validate_graph(with_extra({{3, 1}, {5, 2}, 4}), c), ViolationKind::LabelOutOfRange));
    CHECK(has_violation(validate_graph(with_extra({{2, 1}, {5, 2}, 2}), c), ViolationKind::DecodedEndpoint));
    CHECK(has_violation(validate_graph(with_extra({{4, 2}, {5, 1}, 1}), c), ViolationKind::DuplicateEdge));
    CHECK(has_violation(validate_graph(with_extra({{1, 1}, {5, 1}, 1}), c), ViolationKind::UnknownEndpoint));

    const IacGraph missing({{2, 1}}, {});
    CHECK(has_violation(validate_graph(missing, c), ViolationKind::VertexSetMismatch));

    std::vector<GraphEdge> short_edges = good.edges();
    short_edges.pop_back();
    CHECK(has_violation(validate_graph(IacGraph(good.vertices(), short_edges), c), ViolationKind::EquationCount));
}

TEST_CASE("same-label clash on the minimal four-vertex example")
{
    // both streams of user 3 end up in one receiver-1 component
    const SystemConfig c(4, {1, 1, 2, 1});
    const IacGraph g(c.streams_from(2), {{{2, 1}, {3, 1}, 1}, {{2, 1}, {4, 1}, 1}, {{4, 1}, {3, 2}, 1}});
    const auto vs = validate_graph(g, c);
    CHECK(has_violation(vs, ViolationKind::SameLabelClash));
    CHECK(to_string(ViolationKind::SameLabelClash) == "same-label transmitter clash");
    CHECK(to_string(ViolationKind::SecondLoop) == "second loop");
}

TEST_CASE("equation set mirrors the edges")
{
    const IacGraph g = fixtures::eleven_stream_graph();
    const AlignmentEquationSet eqs = AlignmentEquationSet::from_graph(g);
    REQUIRE(eqs.size() == g.edges().size());
    for (std::size_t i = 0; i < eqs.size(); ++i)
    {
        CHECK(eqs.equations()[i].receiver == g.edges()[i].label);
        CHECK(eqs.equations()[i].reference == g.edges()[i].reference);
        CHECK(eqs.equations()[i].aligned == g.edges()[i].aligned);
    }
    CHECK(eqs.for_receiver(1).size() == 5);
    CHECK(eqs.for_receiver(2).size() == 2);
    CHECK(eqs.for_receiver(3).size() == 1);
}

TEST_CASE("partition helpers")
{
    const IacGraph g({{3, 1}, {2, 1}, {2, 1}, {4, 1}}, {{{2, 1}, {4, 1}, 1}});
    CHECK(g.vertices().size() == 3);
    CHECK(g.index_of({2, 1}) == std::optional<std::size_t>{0});
    CHECK_FALSE(g.index_of({9, 1}).has_value());
    CHECK(g.num_subgraphs() == 2);
    CHECK(g.subgraph_of({2, 1}) == 0);
    CHECK(g.subgraph_of({4, 1}) == 0);
    CHECK(g.subgraph_of({3, 1}) == 1);
    CHECK(g.subgraph_of({7, 7}) == -1);
}

TEST_CASE("a loop that repeats a shorter alignment pattern is flagged")
{
    // v31 -rx2- v41 -rx1- v32 -rx2- v42 -rx1- v22 -rx1- v31: the rx1 run v42..v31 collapses,
    // leaving (3,rx2)(4,rx1)(3,rx2)(4,rx1)
    const SystemConfig c(4, {1, 2, 2, 2});
    const IacGraph repeating({{2, 1}, {2, 2}, {3, 1}, {3, 2}, {4, 1}, {4, 2}},
                             {{{2, 2}, {3, 1}, 1},
                              {{3, 2}, {4, 1}, 1},
                              {{2, 2}, {4, 2}, 1},
                              {{4, 2}, {3, 2}, 2},
                              {{3, 1}, {4, 1}, 2}});
    const auto v = validate_graph(repeating, c);
    REQUIRE(v.size() == 1);
    CHECK(v.front().kind == ViolationKind::RepeatingLoop);

    // rx2 edges crossed: two loops, neither of which repeats
    const IacGraph plain({{2, 1}, {2, 2}, {3, 1}, {3, 2}, {4, 1}, {4, 2}},
                         {{{2, 2}, {3, 1}, 1},
                          {{3, 2}, {4, 1}, 1},
                          {{2, 2}, {4, 2}, 1},
                          {{4, 2}, {3, 1}, 2},
                          {{3, 2}, {4, 1}, 2}});
    for (const Violation &x : validate_graph(plain, c))
        CHECK(x.kind != ViolationKind::RepeatingLoop);
    CHECK(validate_graph(fixtures::eleven_stream_graph(), fixtures::eleven_stream_config()).empty());
}

TEST_CASE("constructions never close a repeating loop")
{
    const SystemConfig c(4, {1, 2, 2, 2});
    for (std::uint64_t seed = 0; seed < 200; ++seed)
        CHECK(validate_graph(build_graph_general(c, seed).graph, c).empty());
    const SystemConfig opt = fixtures::twelve_stream_config();
    for (std::uint64_t seed = 0; seed < 200; ++seed)
        CHECK(validate_graph(build_graph_optimal(opt, seed).graph, opt).empty());
}

TEST_CASE("dead ends past receiver 1 roll the construction back")
{
    const SystemConfig c = fixtures::eleven_stream_config();
    int rolled_back = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed)
    {
        const GraphBuild b = build_graph_general(c, seed);
        rolled_back += b.trace.rollbacks > 0;
        CHECK(b.trace.receivers.size() == 3);
        CHECK(validate_graph(b.graph, c).empty());
    }
    // some seeds strand receiver 3 behind two looped subgraphs; without rollback they fail
    CHECK(rolled_back > 0);
    CHECK_THROWS_AS(build_graph_general(c, 20, 0), ConstructionExhausted);
}
