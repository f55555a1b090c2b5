// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The irsroute Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "irsroute/route.hpp"
#include "irsroute/scene.hpp"

namespace irsroute {

/// True iff the two routes (different users) share no node other than the BS
/// and no node of one has LoS to a node of the other. Throws for same-user routes.
bool neighbor_disjoint(const Route& a, const Route& b, const Scene& scene);

/// Raised when a user has no candidate route at all.
class NoCandidates : public std::runtime_error {
public:
    explicit NoCandidates(int user);
    int user() const { return user_; }

private:
    int user_;
};

/// K-partite graph over candidate routes; an edge joins two routes of different
/// users that are neighbor-disjoint. Vertices are numbered partition by
/// partition, candidates in their given order.
class PathGraph {
public:
    /// Abstract construction: weights per partition and a symmetric adjacency
    /// matrix over all vertices. Intra-partition entries must be false.
    PathGraph(std::vector<std::vector<PathCost>> partition_weights, std::vector<std::vector<bool>> adjacency);

    int partition_count() const { return static_cast<int>(partitions_.size()); }
    int vertex_count() const { return static_cast<int>(weight_.size()); }
    const std::vector<int>& partition(int p) const { return partitions_.at(static_cast<std::size_t>(p)); }
    int partition_of(int v) const { return owner_.at(static_cast<std::size_t>(v)); }
    const PathCost& weight(int v) const { return weight_.at(static_cast<std::size_t>(v)); }
    bool adjacent(int u, int v) const { return adjacency_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]; }
    std::size_t edge_count() const;

    /// Routes backing each vertex; empty for abstract graphs.
    const std::vector<Route>& routes() const { return routes_; }
    const Route& route(int v) const { return routes_.at(static_cast<std::size_t>(v)); }

private:
    friend PathGraph build_path_graph(const std::vector<std::vector<Route>>&, const Scene&);

    std::vector<std::vector<int>> partitions_;
    std::vector<int> owner_;
    std::vector<PathCost> weight_;
    std::vector<std::vector<bool>> adjacency_;
    std::vector<Route> routes_;
};

/// One vertex per candidate route; `candidates[k-1]` holds user k's routes.
/// Throws NoCandidates naming the first user without routes.
PathGraph build_path_graph(const std::vector<std::vector<Route>>& candidates, const Scene& scene);

enum class PartitionOrder {
    by_user,           // partitions in user order
    smallest_first,    // fewest candidates first, ties by user
};

struct CliqueSearchOptions {
    /// Append only the cheapest compatible vertex of the last partition.
    bool last_layer_pruning = true;
    PartitionOrder order = PartitionOrder::by_user;
};

struct Clique {
    std::vector<int> vertices;  // vertices[p] lies in partition p
    PathCost objective;         // max vertex weight
    PathCost weight_sum;
};

struct CliqueSearchResult {
    std::optional<Clique> best;
    std::uint64_t explored = 0;  // partial and full cliques constructed
};

/// Size-K clique (one vertex per partition) minimizing the maximum vertex
/// weight, by recursive extension partition after partition. Ties go to the
/// smaller weight sum, then the lexicographically smaller vertex list.
CliqueSearchResult min_max_clique(const PathGraph& graph, const CliqueSearchOptions& options = {});

/// True iff `clique` holds one vertex per partition and all pairs are adjacent.
bool is_clique(const PathGraph& graph, const std::vector<int>& clique);

}  // namespace irsroute
