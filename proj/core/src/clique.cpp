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

#include "irsroute/clique.hpp"

#include <algorithm>
#include <numeric>

namespace irsroute {

namespace {

std::vector<NodeId> route_nodes(const Route& r, const Scene& scene) {
    std::vector<NodeId> nodes = r.irs;
    nodes.push_back(scene.user_node(r.user));
    return nodes;
}

}  // namespace

bool neighbor_disjoint(const Route& a, const Route& b, const Scene& scene) {
    if (a.user == b.user) throw std::invalid_argument("neighbor_disjoint compares routes of different users");
    const auto na = route_nodes(a, scene);
    const auto nb = route_nodes(b, scene);
    for (NodeId x : na)
        for (NodeId y : nb)
            if (x == y || scene.los(x, y)) return false;
    return true;
}

NoCandidates::NoCandidates(int user)
    : std::runtime_error("user " + std::to_string(user) + " has no candidate route"), user_(user) {}

PathGraph::PathGraph(std::vector<std::vector<PathCost>> partition_weights, std::vector<std::vector<bool>> adjacency)
    : adjacency_(std::move(adjacency)) {
    for (std::size_t p = 0; p < partition_weights.size(); ++p) {
        std::vector<int> members;
        for (const auto& w : partition_weights[p]) {
            members.push_back(static_cast<int>(weight_.size()));
            weight_.push_back(w);
            owner_.push_back(static_cast<int>(p));
        }
        partitions_.push_back(std::move(members));
    }
    const std::size_t n = weight_.size();
    if (adjacency_.size() != n) throw std::invalid_argument("adjacency matrix size mismatch");
    for (std::size_t u = 0; u < n; ++u) {
        if (adjacency_[u].size() != n) throw std::invalid_argument("adjacency matrix size mismatch");
        for (std::size_t v = 0; v < n; ++v) {
            if (adjacency_[u][v] != adjacency_[v][u]) throw std::invalid_argument("adjacency must be symmetric");
            if (adjacency_[u][v] && owner_[u] == owner_[v])
                throw std::invalid_argument("edge inside a partition");
        }
    }
}

std::size_t PathGraph::edge_count() const {
    std::size_t e = 0;
    for (std::size_t u = 0; u < adjacency_.size(); ++u)
        for (std::size_t v = u + 1; v < adjacency_.size(); ++v) e += adjacency_[u][v] ? 1 : 0;
    return e;
}

PathGraph build_path_graph(const std::vector<std::vector<Route>>& candidates, const Scene& scene) {
    std::vector<std::vector<PathCost>> weights;
    std::vector<Route> routes;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (candidates[k].empty()) throw NoCandidates(static_cast<int>(k) + 1);
        std::vector<PathCost> w;
        for (const auto& r : candidates[k]) {
            if (r.user != static_cast<int>(k) + 1)
                throw std::invalid_argument("candidate list " + std::to_string(k + 1) + " holds a route of user " +
                                            std::to_string(r.user));
            w.push_back(r.cost);
            routes.push_back(r);
        }
        weights.push_back(std::move(w));
    }
    const std::size_t n = routes.size();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            // Same-user candidates share the user vertex and are never adjacent.
            if (routes[u].user == routes[v].user) continue;
            adj[u][v] = adj[v][u] = neighbor_disjoint(routes[u], routes[v], scene);
        }
    }
    PathGraph g(std::move(weights), std::move(adj));
    g.routes_ = std::move(routes);
    return g;
}

bool is_clique(const PathGraph& graph, const std::vector<int>& clique) {
    if (static_cast<int>(clique.size()) != graph.partition_count()) return false;
    for (std::size_t p = 0; p < clique.size(); ++p) {
        if (clique[p] < 0 || clique[p] >= graph.vertex_count()) return false;
        if (graph.partition_of(clique[p]) != static_cast<int>(p)) return false;
    }
    for (std::size_t a = 0; a < clique.size(); ++a)
        for (std::size_t b = a + 1; b < clique.size(); ++b)
            if (!graph.adjacent(clique[a], clique[b])) return false;
    return true;
}

namespace {

class CliqueSearch {
public:
    CliqueSearch(const PathGraph& g, const CliqueSearchOptions& opt) : g_(g), opt_(opt) {
        const int k = g_.partition_count();
        order_.resize(static_cast<std::size_t>(k));
        std::iota(order_.begin(), order_.end(), 0);
        if (opt_.order == PartitionOrder::smallest_first) {
            std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
                return g_.partition(a).size() < g_.partition(b).size();
            });
        }
        chosen_.assign(static_cast<std::size_t>(k), -1);
    }

    CliqueSearchResult run() {
        extend(0);
        return std::move(result_);
    }

private:
    bool compatible(int v, std::size_t level) const {
        for (std::size_t l = 0; l < level; ++l)
            if (!g_.adjacent(v, chosen_[static_cast<std::size_t>(order_[l])])) return false;
        return true;
    }

    void offer() {
        Clique c;
        c.vertices = chosen_;
        c.objective = g_.weight(c.vertices.front());
        for (int v : c.vertices) {
            c.objective = std::max(c.objective, g_.weight(v));
            c.weight_sum += g_.weight(v);
        }
        auto& best = result_.best;
        if (!best || c.objective < best->objective ||
            (c.objective == best->objective &&
             (c.weight_sum < best->weight_sum ||
              (c.weight_sum == best->weight_sum && c.vertices < best->vertices)))) {
            best = std::move(c);
        }
    }

    void extend(std::size_t level) {
        const int p = order_[level];
        auto& slot = chosen_[static_cast<std::size_t>(p)];
        const bool last = level + 1 == order_.size();

        if (last && opt_.last_layer_pruning) {
            int pick = -1;
            for (int v : g_.partition(p)) {
                if (!compatible(v, level)) continue;
                if (pick < 0 || g_.weight(v) < g_.weight(pick)) pick = v;
            }
            if (pick >= 0) {
                ++result_.explored;
                slot = pick;
                offer();
                slot = -1;
            }
            return;
        }

        for (int v : g_.partition(p)) {
            if (!compatible(v, level)) continue;
            ++result_.explored;
            slot = v;
            if (last) {
                offer();
            } else {
                extend(level + 1);
            }
            slot = -1;
        }
    }

    const PathGraph& g_;
    CliqueSearchOptions opt_;
    std::vector<int> order_;
    std::vector<int> chosen_;
    CliqueSearchResult result_;
};

}  // namespace

CliqueSearchResult min_max_clique(const PathGraph& graph, const CliqueSearchOptions& options) {
    if (graph.partition_count() < 1) throw std::invalid_argument("path graph has no partitions");
    return CliqueSearch(graph, options).run();
}

}  // namespace irsroute
