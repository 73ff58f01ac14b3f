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

#ifndef IAC_DISJOINT_SETS_HPP
#define IAC_DISJOINT_SETS_HPP

#include <cstddef>
#include <numeric>
#include <vector>

namespace iac
{
    // Union-find that also counts vertices and edges per component, so the
    // "at most one loop" test (edges <= vertices) is O(alpha) per edge.
    class DisjointSets
    {
    public:
        explicit DisjointSets(std::size_t n = 0)
            : parent_(n), vertices_(n, 1), edges_(n, 0)
        {
            std::iota(parent_.begin(), parent_.end(), std::size_t{0});
        }

        std::size_t size() const noexcept { return parent_.size(); }

        std::size_t find(std::size_t x)
        {
            while (parent_[x] != x)
            {
                parent_[x] = parent_[parent_[x]];
                x = parent_[x];
            }
            return x;
        }

        std::size_t vertex_count(std::size_t x) { return vertices_[find(x)]; }
        std::size_t edge_count(std::size_t x) { return edges_[find(x)]; }

        // Edge and vertex counts of the component that adding edge (a, b) would produce.
        std::pair<std::size_t, std::size_t> counts_after_edge(std::size_t a, std::size_t b)
        {
            const std::size_t ra = find(a);
            const std::size_t rb = find(b);
            if (ra == rb)
                return {edges_[ra] + 1, vertices_[ra]};
            return {edges_[ra] + edges_[rb] + 1, vertices_[ra] + vertices_[rb]};
        }

        // Returns true when the edge merged two components.
        bool add_edge(std::size_t a, std::size_t b)
        {
            std::size_t ra = find(a);
            std::size_t rb = find(b);
            if (ra == rb)
            {
                ++edges_[ra];
                return false;
            }
            if (vertices_[ra] < vertices_[rb])
                std::swap(ra, rb);
            parent_[rb] = ra;
            vertices_[ra] += vertices_[rb];
            edges_[ra] += edges_[rb] + 1;
            return true;
        }

    private:
        std::vector<std::size_t> parent_;
        std::vector<std::size_t> vertices_;
        std::vector<std::size_t> edges_;
    };

} // namespace iac

#endif
