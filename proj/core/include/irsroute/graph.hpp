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

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "irsroute/route.hpp"
#include "irsroute/scene.hpp"

namespace irsroute {

/// Directed graph with additive edge costs, required to be acyclic.
class WeightedDag {
public:
    struct Edge {
        int to = 0;
        PathCost weight;
    };

    explicit WeightedDag(int vertex_count);

    /// Throws std::invalid_argument on self-loops, duplicates, unknown vertices,
    /// or an edge that would close a cycle.
    void add_edge(int from, int to, PathCost weight);

    int vertex_count() const { return static_cast<int>(out_.size()); }
    std::size_t edge_count() const { return edge_count_; }
    std::span<const Edge> out_edges(int v) const { return out_.at(static_cast<std::size_t>(v)); }
    std::optional<PathCost> weight(int from, int to) const;
    int in_degree(int v) const;

    /// A topological order of all vertices.
    std::vector<int> topological_order() const;

private:
    bool reaches(int from, int to) const;

    std::vector<std::vector<Edge>> out_;
    std::size_t edge_count_ = 0;
};

struct Path {
    std::vector<int> vertices;
    PathCost cost;

    int edges() const { return static_cast<int>(vertices.size()) - 1; }
};

/// Left fold of the edge weights along the vertex sequence. Every routine in
/// this module reports costs through this fold so equal paths get bit-equal costs.
PathCost path_cost(const WeightedDag& dag, std::span<const int> vertices);

/// Total order used for ties: cost, then edge count, then lexicographic vertex sequence.
bool path_precedes(const Path& a, const Path& b);

/// Cheapest path by topological-order relaxation (exact with negative weights).
std::optional<Path> dag_shortest_path(const WeightedDag& dag, int source, int target,
                                      std::span<const char> blocked = {});

/// Value of `count` that requests every simple path.
inline constexpr std::size_t kAllPaths = std::numeric_limits<std::size_t>::max();

/// Yen's loopless k-shortest paths, in path_precedes order.
std::vector<Path> yen_k_shortest(const WeightedDag& dag, int source, int target, std::size_t count);

/// Number of source->target paths, saturating at `cap`.
std::size_t count_paths(const WeightedDag& dag, int source, int target, std::size_t cap = kAllPaths);

// --- routing graph over a scene -------------------------------------------

enum class EdgeWeighting {
    log_gain,   // ln(d / (M sqrt(beta))) at the scene's M
    path_loss,  // the same at M = 1
    cpb_limit,  // M -> infinity: (-1, ln d) per edge, i.e. most hops first
};

/// Routing DAG of a scene: BS -> IRS, IRS -> farther IRS, IRS -> user edges over LoS links.
class LosGraph {
public:
    LosGraph(Scene scene, EdgeWeighting weighting);

    const Scene& scene() const { return scene_; }
    const WeightedDag& dag() const { return dag_; }
    EdgeWeighting weighting() const { return weighting_; }

    /// Route for a vertex path 0 -> ... -> user node, cost recomputed with path_cost.
    Route to_route(const Path& path) const;

private:
    Scene scene_;
    EdgeWeighting weighting_;
    WeightedDag dag_;
};

/// Edge weight of a link under a weighting.
PathCost edge_weight(const Scene& scene, NodeId from, NodeId to, EdgeWeighting weighting);

LosGraph build_routing_graph(const Scene& scene, EdgeWeighting weighting = EdgeWeighting::log_gain);

/// Cheapest route to user k (1-based); nodes flagged in `blocked` (size J+K+1) are skipped.
std::optional<Route> dag_shortest_path(const LosGraph& graph, int user, std::span<const char> blocked = {});

/// Up to Q cheapest routes to user k; fewer when the graph holds fewer paths.
std::vector<Route> yen_k_shortest(const LosGraph& graph, int user, std::size_t q);

/// Every route to user k in path_precedes order; throws std::length_error beyond `cap`.
std::vector<Route> all_routes(const LosGraph& graph, int user, std::size_t cap);

/// "i j weight" per line, sorted by (i, j).
std::string to_edge_list(const LosGraph& graph);
/// Graphviz dump with BS / IRS-n / User-k labels.
std::string to_dot(const LosGraph& graph);

}  // namespace irsroute
