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

#include "iac/iac_graph.hpp"

#include "iac/disjoint_sets.hpp"
#include "iac/feasibility.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <tuple>

namespace iac
{
    // ---------- graph containers ----------

    IacGraph::IacGraph(std::vector<StreamId> vertices, std::vector<GraphEdge> edges)
        : vertices_(std::move(vertices)), edges_(std::move(edges))
    {
        std::sort(vertices_.begin(), vertices_.end());
        vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());

        DisjointSets sets(vertices_.size());
        for (const GraphEdge &e : edges_)
        {
            const auto a = index_of(e.reference);
            const auto b = index_of(e.aligned);
            if (a && b)
                sets.add_edge(*a, *b);
        }
        // vertices are sorted, so first-seen order numbers subgraphs by their smallest vertex
        partition_.assign(vertices_.size(), -1);
        std::map<std::size_t, int> root_ids;
        for (std::size_t i = 0; i < vertices_.size(); ++i)
        {
            const auto [it, inserted] = root_ids.try_emplace(sets.find(i), static_cast<int>(root_ids.size()));
            partition_[i] = it->second;
        }
        num_subgraphs_ = static_cast<int>(root_ids.size());
    }

    IacGraph IacGraph::empty_for(const SystemConfig &config)
    {
        return IacGraph(config.streams_from(2), {});
    }

    std::optional<std::size_t> IacGraph::index_of(StreamId id) const
    {
        const auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id);
        if (it == vertices_.end() || *it != id)
            return std::nullopt;
        return static_cast<std::size_t>(it - vertices_.begin());
    }

    int IacGraph::subgraph_of(StreamId id) const
    {
        const auto index = index_of(id);
        return index ? partition_[*index] : -1;
    }

    AlignmentEquationSet::AlignmentEquationSet(std::vector<AlignmentEquation> equations)
        : equations_(std::move(equations))
    {
    }

    AlignmentEquationSet AlignmentEquationSet::from_graph(const IacGraph &graph)
    {
        std::vector<AlignmentEquation> eqs;
        eqs.reserve(graph.edges().size());
        for (const GraphEdge &e : graph.edges())
            eqs.push_back({e.label, e.reference, e.aligned});
        return AlignmentEquationSet(std::move(eqs));
    }

    std::vector<AlignmentEquation> AlignmentEquationSet::for_receiver(int receiver) const
    {
        std::vector<AlignmentEquation> out;
        for (const AlignmentEquation &eq : equations_)
            if (eq.receiver == receiver)
                out.push_back(eq);
        return out;
    }

    int expected_equation_count(const SystemConfig &config, int receiver)
    {
        if (receiver < 1 || receiver > compute_k_iac(config))
            return 0;
        int later = 0;
        for (int j = receiver + 1; j <= config.num_users(); ++j)
            later += config.dof(j);
        return later - (config.num_antennas() - config.dof(receiver));
    }

    // ---------- construction ----------

    namespace
    {
        int count_components(DisjointSets &sets)
        {
            std::set<std::size_t> roots;
            for (std::size_t i = 0; i < sets.size(); ++i)
                roots.insert(sets.find(i));
            return static_cast<int>(roots.size());
        }

        bool holds_loop(DisjointSets &sets, std::size_t v)
        {
            return sets.edge_count(v) == sets.vertex_count(v);
        }

        // A_j': references each transmitter may no longer use at the current receiver.
        // Seeded with the transmitter's own reference streams.
        std::map<int, std::set<StreamId>> initial_exclusions(const std::vector<StreamId> &references)
        {
            std::map<int, std::set<StreamId>> used;
            for (StreamId r : references)
                used[r.tx].insert(r);
            return used;
        }

        // Would edge (v, r) with `label` close a loop whose alignment pattern repeats? Runs of equal
        // labels collapse to one transfer, so the loop reduces to a cyclic word of (transmitter,
        // label) steps. If that word is a proper power, the loop matrix is a power of a shorter
        // product and every eigenvector puts two streams of one transmitter on the same line.
        bool closes_repeating_loop(const std::vector<GraphEdge> &edges, StreamId v, StreamId r, int label)
        {
            std::map<StreamId, std::vector<std::pair<StreamId, int>>> adj;
            for (const GraphEdge &e : edges)
            {
                adj[e.reference].emplace_back(e.aligned, e.label);
                adj[e.aligned].emplace_back(e.reference, e.label);
            }
            std::map<StreamId, std::pair<StreamId, int>> parent;
            std::deque<StreamId> queue{r};
            parent.emplace(r, std::pair{r, 0});
            while (!queue.empty() && !parent.contains(v))
            {
                const StreamId u = queue.front();
                queue.pop_front();
                for (const auto &[w, l] : adj[u])
                    if (parent.emplace(w, std::pair{u, l}).second)
                        queue.push_back(w);
            }
            if (!parent.contains(v))
                return false;

            // cycle r -> ... -> v -> r: vertex i leaves along labels[i]
            std::vector<StreamId> cycle;
            std::vector<int> labels;
            for (StreamId u = v; !(u == r); u = parent.at(u).first)
            {
                cycle.push_back(u);
                labels.push_back(parent.at(u).second);
            }
            cycle.push_back(r);
            labels.push_back(label);
            // cycle now runs v -> ... -> r -> v, labels[i] joins cycle[i] and cycle[i + 1]

            const std::size_t n = cycle.size();
            std::size_t start = n;
            for (std::size_t i = 0; i < n; ++i)
                if (labels[(i + n - 1) % n] != labels[i])
                {
                    start = i;
                    break;
                }
            if (start == n)
                return false;
            std::vector<std::pair<int, int>> word;
            for (std::size_t step = 0; step < n; ++step)
            {
                const std::size_t i = (start + step) % n;
                if (labels[(i + n - 1) % n] != labels[i])
                    word.emplace_back(cycle[i].tx, labels[i]);
            }
            const std::size_t len = word.size();
            for (std::size_t period = 1; period < len; ++period)
            {
                if (len % period != 0)
                    continue;
                bool repeats = true;
                for (std::size_t i = 0; i < len && repeats; ++i)
                    repeats = word[i] == word[(i + period) % len];
                if (repeats)
                    return true;
            }
            return false;
        }

        void require_feasible(const SystemConfig &config)
        {
            const FeasibilityVerdict verdict = check_feasibility(config);
            if (!verdict.feasible)
            {
                const InequalityCheck &f = verdict.failed_inequalities.front();
                throw Error(ErrorCode::InfeasibleConfig,
                            std::string(to_string(f.kind)) + " inequality fails (" + std::to_string(f.lhs) +
                                " > " + std::to_string(f.rhs) + ")");
            }
        }
    } // namespace

    GraphBuild build_graph_general(const SystemConfig &config, std::uint64_t seed, int retry_budget)
    {
        if (retry_budget < 0)
            throw std::invalid_argument("retry_budget must be non-negative");
        require_feasible(config);

        const IacGraph base = IacGraph::empty_for(config);
        auto idx = [&](StreamId s) { return *base.index_of(s); };
        const int k_iac = compute_k_iac(config);
        const int m = config.num_antennas();

        DisjointSets sets(base.vertices().size());
        std::vector<GraphEdge> edges;
        ConstructionTrace trace;
        trace.retry_budget = retry_budget;
        std::mt19937_64 rng(seed);
        // restarts charged to each receiver, summed over rollbacks
        std::vector<int> restarts(static_cast<std::size_t>(k_iac) + 1, 0);

        // One attempt at receiver k on top of `sets`; commits and returns true on success.
        auto attach_receiver = [&](int k) -> bool
        {
            const std::vector<StreamId> eta = config.streams_from(k + 1);
            const auto num_refs = static_cast<std::size_t>(m - config.dof(k));
            DisjointSets trial = sets;
            std::vector<GraphEdge> added;
            ReceiverTrace rt;
            rt.receiver = k;
            rt.restarts = restarts[static_cast<std::size_t>(k)];

            std::vector<StreamId> pool = eta;
            std::shuffle(pool.begin(), pool.end(), rng);
            std::vector<StreamId> refs(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(num_refs));
            std::vector<StreamId> pending(pool.begin() + static_cast<std::ptrdiff_t>(num_refs), pool.end());
            std::sort(refs.begin(), refs.end());

            // Visit pending streams subgraph by subgraph; subgraphs that already carry a loop
            // go first because they can only attach to a loop-free subgraph.
            std::map<std::size_t, std::vector<StreamId>> by_root;
            for (StreamId v : pending)
                by_root[trial.find(idx(v))].push_back(v);
            std::vector<std::size_t> looped, loop_free;
            for (const auto &[root, members] : by_root)
                (holds_loop(trial, root) ? looped : loop_free).push_back(root);
            std::shuffle(looped.begin(), looped.end(), rng);
            std::shuffle(loop_free.begin(), loop_free.end(), rng);
            std::vector<StreamId> order;
            for (const auto *group : {&looped, &loop_free})
                for (std::size_t root : *group)
                {
                    std::vector<StreamId> members = by_root[root];
                    std::sort(members.begin(), members.end());
                    order.insert(order.end(), members.begin(), members.end());
                }

            auto used = initial_exclusions(refs);
            for (StreamId v : order)
            {
                std::vector<StreamId> candidates;
                for (StreamId r : refs)
                    if (!used[v.tx].contains(r))
                        candidates.push_back(r);
                std::shuffle(candidates.begin(), candidates.end(), rng);

                bool connected = false;
                for (StreamId r : candidates)
                {
                    const auto [e, p] = trial.counts_after_edge(idx(v), idx(r));
                    if (e > p)
                        continue;
                    if (trial.find(idx(v)) == trial.find(idx(r)))
                    {
                        std::vector<GraphEdge> so_far = edges;
                        so_far.insert(so_far.end(), added.begin(), added.end());
                        if (closes_repeating_loop(so_far, v, r, k))
                            continue;
                    }
                    if (trial.add_edge(idx(v), idx(r)))
                        ++rt.merges;
                    else
                        ++rt.loops_closed;
                    added.push_back({r, v, k});
                    used[v.tx].insert(r);
                    connected = true;
                    break;
                }
                if (!connected)
                    return false;
            }

            sets = trial;
            edges.insert(edges.end(), added.begin(), added.end());
            rt.references = refs;
            rt.edges_after = edges.size();
            rt.subgraphs_after = count_components(sets);
            trace.receivers.push_back(std::move(rt));
            return true;
        };

        // A receiver that keeps dead-ending on the current prefix rolls the construction back to
        // receiver 1: earlier receivers may have closed loops in every subgraph it can reach.
        int k = 1;
        int local_failures = 0;
        while (k <= k_iac)
        {
            if (attach_receiver(k))
            {
                ++k;
                local_failures = 0;
                continue;
            }
            if (++restarts[static_cast<std::size_t>(k)] > retry_budget)
                throw ConstructionExhausted(k, retry_budget);
            if (k > 1 && ++local_failures >= kRedrawsBeforeRollback)
            {
                sets = DisjointSets(base.vertices().size());
                edges.clear();
                trace.receivers.clear();
                ++trace.rollbacks;
                k = 1;
                local_failures = 0;
            }
        }

        IacGraph graph(base.vertices(), std::move(edges));
        AlignmentEquationSet equations = AlignmentEquationSet::from_graph(graph);
        return {std::move(graph), std::move(equations), std::move(trace)};
    }

    GraphBuild build_graph_optimal(const SystemConfig &config, std::uint64_t seed, int retry_budget)
    {
        if (!is_optimal_tuple(config))
            throw Error(ErrorCode::InfeasibleConfig, "tuple does not reach 2M DoF with k_IAC = 2");

        const IacGraph base = IacGraph::empty_for(config);
        auto idx = [&](StreamId s) { return *base.index_of(s); };
        const int d2 = config.dof(2);

        DisjointSets sets(base.vertices().size());
        std::vector<GraphEdge> edges;
        ConstructionTrace trace;
        trace.retry_budget = retry_budget;
        trace.optimal_layout = true;
        std::mt19937_64 rng(seed);

        // Receiver 1: every stream of user 2 is a reference; streams of users 3..K are dealt to
        // them round-robin by cumulative position.
        {
            ReceiverTrace rt;
            rt.receiver = 1;
            rt.references = config.streams_of(2);
            int position = 0;
            for (StreamId s : config.streams_from(3))
            {
                const StreamId ref{2, (position % d2) + 1};
                ++position;
                if (sets.add_edge(idx(s), idx(ref)))
                    ++rt.merges;
                else
                    ++rt.loops_closed;
                edges.push_back({ref, s, 1});
            }
            rt.edges_after = edges.size();
            rt.subgraphs_after = count_components(sets);
            trace.receivers.push_back(std::move(rt));
        }

        // Receiver 2: one stream per subgraph joins the aligned set, the rest become references.
        ReceiverTrace rt;
        rt.receiver = 2;
        std::vector<StreamId> chosen;
        for (int l2 = 1; l2 <= d2; ++l2)
        {
            const std::size_t root = sets.find(idx({2, l2}));
            std::vector<StreamId> members;
            for (StreamId s : config.streams_from(3))
                if (sets.find(idx(s)) == root)
                    members.push_back(s);
            std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
            chosen.push_back(members[pick(rng)]);
        }
        std::vector<StreamId> refs;
        for (StreamId s : config.streams_from(3))
            if (std::find(chosen.begin(), chosen.end(), s) == chosen.end())
                refs.push_back(s);
        rt.references = refs;

        auto used = initial_exclusions(refs);
        auto connect = [&](StreamId v, const std::vector<StreamId> &candidates)
        {
            std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
            const StreamId r = candidates[pick(rng)];
            if (sets.add_edge(idx(v), idx(r)))
                ++rt.merges;
            else
                ++rt.loops_closed;
            edges.push_back({r, v, 2});
            used[v.tx].insert(r);
        };

        // first pass: close a loop inside the stream's own subgraph
        std::vector<StreamId> second_pass;
        for (StreamId v : chosen)
        {
            std::vector<StreamId> candidates;
            for (StreamId r : refs)
                if (sets.find(idx(r)) == sets.find(idx(v)) && !used[v.tx].contains(r) &&
                    !closes_repeating_loop(edges, v, r, 2))
                    candidates.push_back(r);
            if (candidates.empty())
                second_pass.push_back(v);
            else
                connect(v, candidates);
        }
        // second pass: merge the remaining loop-free subgraphs into ones that already hold a loop
        for (StreamId v : second_pass)
        {
            std::vector<StreamId> candidates;
            for (StreamId r : refs)
            {
                if (sets.find(idx(r)) == sets.find(idx(v)) || used[v.tx].contains(r))
                    continue;
                const auto [e, p] = sets.counts_after_edge(idx(v), idx(r));
                if (holds_loop(sets, idx(r)) && e <= p)
                    candidates.push_back(r);
            }
            if (candidates.empty())
            {
                GraphBuild fallback = build_graph_general(config, seed, retry_budget);
                fallback.trace.fell_back = true;
                return fallback;
            }
            connect(v, candidates);
        }
        rt.edges_after = edges.size();
        rt.subgraphs_after = count_components(sets);
        trace.receivers.push_back(std::move(rt));

        IacGraph graph(base.vertices(), std::move(edges));
        AlignmentEquationSet equations = AlignmentEquationSet::from_graph(graph);
        return {std::move(graph), std::move(equations), std::move(trace)};
    }

    // ---------- validation ----------

    std::string_view to_string(ViolationKind kind)
    {
        switch (kind)
        {
        case ViolationKind::VertexSetMismatch:
            return "vertex set mismatch";
        case ViolationKind::UnknownEndpoint:
            return "unknown endpoint";
        case ViolationKind::SameTransmitterEdge:
            return "same-transmitter edge";
        case ViolationKind::LabelOutOfRange:
            return "label out of range";
        case ViolationKind::DecodedEndpoint:
            return "decoded endpoint";
        case ViolationKind::DuplicateEdge:
            return "duplicate edge";
        case ViolationKind::SecondLoop:
            return "second loop";
        case ViolationKind::SameLabelClash:
            return "same-label transmitter clash";
        case ViolationKind::RepeatingLoop:
            return "repeating loop";
        case ViolationKind::EquationCount:
            return "equation count";
        }
        return "unknown";
    }

    std::vector<Violation> validate_graph(const IacGraph &graph, const SystemConfig &config)
    {
        std::vector<Violation> out;
        auto report = [&](ViolationKind kind, std::string detail)
        { out.push_back({kind, std::move(detail)}); };

        const std::vector<StreamId> expected = config.streams_from(2);
        if (graph.vertices() != expected)
            report(ViolationKind::VertexSetMismatch, "graph has " + std::to_string(graph.vertices().size()) +
                                                         " vertices, expected the " +
                                                         std::to_string(expected.size()) + " streams of users 2..K");

        const int k_iac = compute_k_iac(config);
        DisjointSets sets(graph.vertices().size());
        std::set<std::tuple<int, StreamId, StreamId>> seen;
        std::map<int, int> per_label;
        std::map<int, std::vector<std::size_t>> edges_by_label;

        for (std::size_t i = 0; i < graph.edges().size(); ++i)
        {
            const GraphEdge &e = graph.edges()[i];
            const std::string name = "edge " + std::to_string(i) + " (" + to_string(e.reference) + ", " +
                                     to_string(e.aligned) + ", rx " + std::to_string(e.label) + ")";
            const auto a = graph.index_of(e.reference);
            const auto b = graph.index_of(e.aligned);
            if (!a || !b)
            {
                report(ViolationKind::UnknownEndpoint, name);
                continue;
            }
            if (e.reference.tx == e.aligned.tx)
                report(ViolationKind::SameTransmitterEdge, name);
            if (e.label < 1 || e.label > k_iac)
                report(ViolationKind::LabelOutOfRange, name + ", k_IAC = " + std::to_string(k_iac));
            else if (e.reference.tx <= e.label || e.aligned.tx <= e.label)
                report(ViolationKind::DecodedEndpoint, name);
            const auto key = std::make_tuple(e.label, std::min(e.reference, e.aligned), std::max(e.reference, e.aligned));
            if (!seen.insert(key).second)
                report(ViolationKind::DuplicateEdge, name);

            sets.add_edge(*a, *b);
            ++per_label[e.label];
            edges_by_label[e.label].push_back(i);
        }

        std::set<std::size_t> roots;
        for (std::size_t v = 0; v < graph.vertices().size(); ++v)
            roots.insert(sets.find(v));
        for (std::size_t root : roots)
            if (sets.edge_count(root) > sets.vertex_count(root))
                report(ViolationKind::SecondLoop,
                       "subgraph containing " + to_string(graph.vertices()[root]) + " has " +
                           std::to_string(sets.edge_count(root)) + " edges over " +
                           std::to_string(sets.vertex_count(root)) + " vertices");

        {
            DisjointSets growing(graph.vertices().size());
            const std::vector<GraphEdge> &all = graph.edges();
            for (std::size_t i = 0; i < all.size(); ++i)
            {
                const std::size_t a = *graph.index_of(all[i].aligned);
                const std::size_t b = *graph.index_of(all[i].reference);
                const bool first_loop = growing.find(a) == growing.find(b) &&
                                        growing.edge_count(a) + 1 == growing.vertex_count(a);
                if (first_loop && closes_repeating_loop({all.begin(), all.begin() + static_cast<std::ptrdiff_t>(i)},
                                                        all[i].aligned, all[i].reference, all[i].label))
                    report(ViolationKind::RepeatingLoop, "loop closed by " + to_string(all[i].reference) + " -- " +
                                                             to_string(all[i].aligned) +
                                                             " repeats a shorter alignment pattern");
                growing.add_edge(a, b);
            }
        }

        for (const auto &[label, indices] : edges_by_label)
        {
            DisjointSets label_sets(graph.vertices().size());
            for (std::size_t i : indices)
                label_sets.add_edge(*graph.index_of(graph.edges()[i].reference),
                                    *graph.index_of(graph.edges()[i].aligned));
            std::map<std::size_t, std::map<int, StreamId>> tx_seen;
            for (std::size_t v = 0; v < graph.vertices().size(); ++v)
            {
                if (label_sets.vertex_count(v) == 1)
                    continue;
                const StreamId id = graph.vertices()[v];
                auto &owners = tx_seen[label_sets.find(v)];
                const auto [it, inserted] = owners.try_emplace(id.tx, id);
                if (!inserted)
                    report(ViolationKind::SameLabelClash, to_string(it->second) + " and " + to_string(id) +
                                                              " are joined by rx " + std::to_string(label) + " edges");
            }
        }

        for (int k = 1; k <= k_iac; ++k)
        {
            const int want = expected_equation_count(config, k);
            const int have = per_label.contains(k) ? per_label[k] : 0;
            if (have != want)
                report(ViolationKind::EquationCount, "receiver " + std::to_string(k) + " has " +
                                                         std::to_string(have) + " equations, expected " +
                                                         std::to_string(want));
        }
        return out;
    }

    // ---------- classification ----------

    std::string_view to_string(SubgraphKind kind)
    {
        return kind == SubgraphKind::Tree ? "TREE" : "ONE_LOOP";
    }

    namespace
    {
        std::vector<CycleStep> find_cycle(const IacGraph &graph, const Subgraph &sub)
        {
            const auto &edges = graph.edges();
            std::map<StreamId, std::vector<std::size_t>> incident;
            for (StreamId v : sub.vertices)
                incident[v];
            for (std::size_t i : sub.edges)
            {
                incident[edges[i].reference].push_back(i);
                if (edges[i].aligned != edges[i].reference)
                    incident[edges[i].aligned].push_back(i);
            }

            // strip leaves until only the cycle is left
            std::map<StreamId, int> degree;
            for (const auto &[v, list] : incident)
                degree[v] = static_cast<int>(list.size());
            std::set<std::size_t> alive(sub.edges.begin(), sub.edges.end());
            std::deque<StreamId> leaves;
            for (const auto &[v, deg] : degree)
                if (deg == 1)
                    leaves.push_back(v);
            while (!leaves.empty())
            {
                const StreamId v = leaves.front();
                leaves.pop_front();
                for (std::size_t i : incident[v])
                {
                    if (!alive.erase(i))
                        continue;
                    const StreamId other = edges[i].reference == v ? edges[i].aligned : edges[i].reference;
                    if (--degree[other] == 1)
                        leaves.push_back(other);
                }
                degree[v] = 0;
            }
            if (alive.empty())
                throw Error(ErrorCode::MalformedGraph, "one-loop subgraph without a cycle");

            auto other_end = [&](std::size_t i, StreamId from)
            { return edges[i].reference == from ? edges[i].aligned : edges[i].reference; };

            StreamId anchor = edges[*alive.begin()].reference;
            for (std::size_t i : alive)
                anchor = std::min({anchor, edges[i].reference, edges[i].aligned});

            std::vector<CycleStep> cycle;
            StreamId current = anchor;
            std::size_t previous = static_cast<std::size_t>(-1);
            do
            {
                std::size_t next = static_cast<std::size_t>(-1);
                for (std::size_t i : incident[current])
                    if (alive.contains(i) && i != previous)
                    {
                        next = i;
                        break;
                    }
                if (next == static_cast<std::size_t>(-1) || cycle.size() > alive.size())
                    throw Error(ErrorCode::MalformedGraph, "cycle walk failed");
                const StreamId to = other_end(next, current);
                cycle.push_back({next, edges[next].label, current, to});
                previous = next;
                current = to;
            } while (current != anchor);
            return cycle;
        }
    } // namespace

    std::vector<Subgraph> classify_subgraphs(const IacGraph &graph)
    {
        std::vector<Subgraph> subs(static_cast<std::size_t>(graph.num_subgraphs()));
        for (std::size_t q = 0; q < subs.size(); ++q)
            subs[q].id = static_cast<int>(q);
        for (StreamId v : graph.vertices())
            subs[static_cast<std::size_t>(graph.subgraph_of(v))].vertices.push_back(v);
        for (std::size_t i = 0; i < graph.edges().size(); ++i)
        {
            const GraphEdge &e = graph.edges()[i];
            const int qa = graph.subgraph_of(e.reference);
            const int qb = graph.subgraph_of(e.aligned);
            if (qa < 0 || qb < 0)
                throw Error(ErrorCode::MalformedGraph, "edge " + std::to_string(i) + " touches an unknown vertex");
            subs[static_cast<std::size_t>(qa)].edges.push_back(i);
        }
        for (Subgraph &sub : subs)
        {
            const std::size_t p = sub.vertices.size();
            const std::size_t e = sub.edges.size();
            if (e + 1 == p)
                sub.kind = SubgraphKind::Tree;
            else if (e == p)
            {
                sub.kind = SubgraphKind::OneLoop;
                sub.cycle = find_cycle(graph, sub);
            }
            else
                throw Error(ErrorCode::MalformedGraph, "subgraph " + std::to_string(sub.id) + " has " +
                                                           std::to_string(e) + " edges over " + std::to_string(p) +
                                                           " vertices");
        }
        return subs;
    }

} // namespace iac
