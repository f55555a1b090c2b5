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

#include "irsroute/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace irsroute {

// --- WeightedDag ----------------------------------------------------------

WeightedDag::WeightedDag(int vertex_count) {
    if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
    out_.resize(static_cast<std::size_t>(vertex_count));
}

bool WeightedDag::reaches(int from, int to) const {
    std::vector<char> seen(out_.size(), 0);
    std::vector<int> stack{from};
    seen[static_cast<std::size_t>(from)] = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        if (u == to) return true;
        for (const auto& e : out_[static_cast<std::size_t>(u)]) {
            if (!seen[static_cast<std::size_t>(e.to)]) {
                seen[static_cast<std::size_t>(e.to)] = 1;
                stack.push_back(e.to);
            }
        }
    }
    return false;
}

void WeightedDag::add_edge(int from, int to, PathCost weight) {
    if (from < 0 || to < 0 || from >= vertex_count() || to >= vertex_count())
        throw std::invalid_argument("edge endpoint out of range");
    if (from == to) throw std::invalid_argument("self-loop on vertex " + std::to_string(from));
    if (this->weight(from, to)) throw std::invalid_argument("duplicate edge");
    if (reaches(to, from))
        throw std::invalid_argument("edge " + std::to_string(from) + " -> " + std::to_string(to) + " closes a cycle");
    out_[static_cast<std::size_t>(from)].push_back({to, weight});
    ++edge_count_;
}

std::optional<PathCost> WeightedDag::weight(int from, int to) const {
    for (const auto& e : out_.at(static_cast<std::size_t>(from)))
        if (e.to == to) return e.weight;
    return std::nullopt;
}

int WeightedDag::in_degree(int v) const {
    int d = 0;
    for (const auto& edges : out_)
        for (const auto& e : edges)
            if (e.to == v) ++d;
    return d;
}

std::vector<int> WeightedDag::topological_order() const {
    const auto n = out_.size();
    std::vector<int> indeg(n, 0);
    for (const auto& edges : out_)
        for (const auto& e : edges) ++indeg[static_cast<std::size_t>(e.to)];
    // Kahn with a min-heap keeps the order independent of edge insertion order.
    std::set<int> ready;
    for (std::size_t v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.insert(static_cast<int>(v));
    std::vector<int> order;
    order.reserve(n);
    while (!ready.empty()) {
        const int u = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(u);
        for (const auto& e : out_[static_cast<std::size_t>(u)])
            if (--indeg[static_cast<std::size_t>(e.to)] == 0) ready.insert(e.to);
    }
    if (order.size() != n) throw std::logic_error("graph contains a cycle");
    return order;
}

// --- paths ----------------------------------------------------------------

PathCost path_cost(const WeightedDag& dag, std::span<const int> vertices) {
    PathCost c;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
        const auto w = dag.weight(vertices[i], vertices[i + 1]);
        if (!w) throw std::invalid_argument("path uses a missing edge");
        c += *w;
    }
    return c;
}

bool path_precedes(const Path& a, const Path& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
}

namespace {

using EdgeSet = std::set<std::pair<int, int>>;

// Best extension of `prefix` (ending at its last vertex) to `target`, avoiding
// blocked vertices and edges. Labels are full paths so the tie order applies to
// whole paths, and costs are accumulated as a left fold from the source.
std::optional<Path> best_extension(const WeightedDag& dag, const std::vector<int>& order, const Path& prefix,
                                   int target, std::span<const char> blocked, const EdgeSet& blocked_edges) {
    std::vector<std::optional<Path>> label(static_cast<std::size_t>(dag.vertex_count()));
    const int start = prefix.vertices.back();
    label[static_cast<std::size_t>(start)] = prefix;
    auto is_blocked = [&](int v) { return !blocked.empty() && blocked[static_cast<std::size_t>(v)] != 0; };

    for (int u : order) {
        const auto& lu = label[static_cast<std::size_t>(u)];
        if (!lu || u == target) continue;
        for (const auto& e : dag.out_edges(u)) {
            if (is_blocked(e.to) || blocked_edges.contains({u, e.to})) continue;
            Path cand{lu->vertices, lu->cost + e.weight};
            cand.vertices.push_back(e.to);
            auto& lv = label[static_cast<std::size_t>(e.to)];
            if (!lv || path_precedes(cand, *lv)) lv = std::move(cand);
        }
    }
    return label[static_cast<std::size_t>(target)];
}

void check_endpoints(const WeightedDag& dag, int source, int target) {
    if (source < 0 || target < 0 || source >= dag.vertex_count() || target >= dag.vertex_count())
        throw std::invalid_argument("path endpoint out of range");
}

}  // namespace

std::optional<Path> dag_shortest_path(const WeightedDag& dag, int source, int target, std::span<const char> blocked) {
    check_endpoints(dag, source, target);
    if (!blocked.empty() && static_cast<int>(blocked.size()) != dag.vertex_count())
        throw std::invalid_argument("blocked mask size mismatch");
    if (source == target) return Path{{source}, {}};
    if (!blocked.empty() && (blocked[static_cast<std::size_t>(source)] || blocked[static_cast<std::size_t>(target)]))
        return std::nullopt;
    return best_extension(dag, dag.topological_order(), Path{{source}, {}}, target, blocked, {});
}

std::vector<Path> yen_k_shortest(const WeightedDag& dag, int source, int target, std::size_t count) {
    check_endpoints(dag, source, target);
    std::vector<Path> accepted;
    if (count == 0 || source == target) return accepted;
    const auto order = dag.topological_order();

    auto first = best_extension(dag, order, Path{{source}, {}}, target, {}, {});
    if (!first) return accepted;
    accepted.push_back(std::move(*first));

    std::vector<Path> candidates;
    std::set<std::vector<int>> known{accepted.front().vertices};
    std::vector<char> blocked(static_cast<std::size_t>(dag.vertex_count()), 0);

    while (accepted.size() < count) {
        const std::vector<int> last = accepted.back().vertices;
        for (std::size_t i = 0; i + 1 < last.size(); ++i) {
            const std::vector<int> root(last.begin(), last.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            EdgeSet removed;
            for (const auto& p : accepted) {
                if (p.vertices.size() > i + 1 && std::equal(root.begin(), root.end(), p.vertices.begin()))
                    removed.insert({p.vertices[i], p.vertices[i + 1]});
            }
            std::fill(blocked.begin(), blocked.end(), 0);
            for (std::size_t r = 0; r < i; ++r) blocked[static_cast<std::size_t>(root[r])] = 1;

            auto found = best_extension(dag, order, Path{root, path_cost(dag, root)}, target, blocked, removed);
            if (found && known.insert(found->vertices).second) {
                found->cost = path_cost(dag, found->vertices);
                candidates.push_back(std::move(*found));
            }
        }
        if (candidates.empty()) break;
        auto best = std::min_element(candidates.begin(), candidates.end(), path_precedes);
        accepted.push_back(std::move(*best));
        candidates.erase(best);
    }
    return accepted;
}

std::size_t count_paths(const WeightedDag& dag, int source, int target, std::size_t cap) {
    check_endpoints(dag, source, target);
    std::vector<std::size_t> ways(static_cast<std::size_t>(dag.vertex_count()), 0);
    ways[static_cast<std::size_t>(source)] = 1;
    for (int u : dag.topological_order()) {
        const std::size_t w = ways[static_cast<std::size_t>(u)];
        if (w == 0 || u == target) continue;
        for (const auto& e : dag.out_edges(u)) {
            auto& slot = ways[static_cast<std::size_t>(e.to)];
            slot = (cap - slot < w) ? cap : slot + w;
        }
    }
    return std::min(ways[static_cast<std::size_t>(target)], cap);
}

// --- routing graph --------------------------------------------------------

PathCost edge_weight(const Scene& scene, NodeId from, NodeId to, EdgeWeighting weighting) {
    const auto& p = scene.params();
    const double d = scene.distance(from, to);
    switch (weighting) {
        case EdgeWeighting::log_gain:
            return {std::log(d / (p.irs_elements() * std::sqrt(p.ref_path_gain))), 0.0};
        case EdgeWeighting::path_loss:
            return {std::log(d / std::sqrt(p.ref_path_gain)), 0.0};
        case EdgeWeighting::cpb_limit:
            return {-1.0, std::log(d)};
    }
    throw std::invalid_argument("unknown edge weighting");
}

LosGraph::LosGraph(Scene scene, EdgeWeighting weighting)
    : scene_(std::move(scene)), weighting_(weighting), dag_(scene_.node_count()) {
    const int j_count = scene_.irs_count();
    for (NodeId j = 1; j <= j_count; ++j)
        if (scene_.los(0, j)) dag_.add_edge(0, j, edge_weight(scene_, 0, j, weighting_));
    for (NodeId i = 1; i <= j_count; ++i) {
        for (NodeId j = 1; j <= j_count; ++j) {
            if (i != j && scene_.los(i, j) && scene_.distance(j, 0) > scene_.distance(i, 0))
                dag_.add_edge(i, j, edge_weight(scene_, i, j, weighting_));
        }
        for (int k = 1; k <= scene_.user_count(); ++k) {
            const NodeId u = scene_.user_node(k);
            if (scene_.los(i, u)) dag_.add_edge(i, u, edge_weight(scene_, i, u, weighting_));
        }
    }
}

Route LosGraph::to_route(const Path& path) const {
    if (path.vertices.size() < 3 || path.vertices.front() != 0 || !scene_.is_user(path.vertices.back()))
        throw std::invalid_argument("path is not a BS-to-user route");
    Route r;
    r.user = scene_.user_index(path.vertices.back());
    r.irs.assign(path.vertices.begin() + 1, path.vertices.end() - 1);
    r.cost = path_cost(dag_, path.vertices);
    r.distance = route_distance(scene_, r.user, r.irs);
    return r;
}

LosGraph build_routing_graph(const Scene& scene, EdgeWeighting weighting) { return LosGraph(scene, weighting); }

std::optional<Route> dag_shortest_path(const LosGraph& graph, int user, std::span<const char> blocked) {
    const auto path = dag_shortest_path(graph.dag(), 0, graph.scene().user_node(user), blocked);
    if (!path) return std::nullopt;
    return graph.to_route(*path);
}

std::vector<Route> yen_k_shortest(const LosGraph& graph, int user, std::size_t q) {
    if (q < 1) throw std::invalid_argument("Q must be at least 1");
    std::vector<Route> routes;
    for (const auto& p : yen_k_shortest(graph.dag(), 0, graph.scene().user_node(user), q))
        routes.push_back(graph.to_route(p));
    return routes;
}

std::vector<Route> all_routes(const LosGraph& graph, int user, std::size_t cap) {
    const auto& dag = graph.dag();
    const int target = graph.scene().user_node(user);
    std::vector<Path> paths;
    std::vector<int> stack{0};
    // Depth-first walk; every path of a DAG is simple.
    auto walk = [&](auto&& self, int u) -> void {
        if (u == target) {
            if (paths.size() >= cap) throw std::length_error("path enumeration cap exceeded");
            paths.push_back({stack, path_cost(dag, stack)});
            return;
        }
        for (const auto& e : dag.out_edges(u)) {
            stack.push_back(e.to);
            self(self, e.to);
            stack.pop_back();
        }
    };
    walk(walk, 0);
    std::sort(paths.begin(), paths.end(), path_precedes);
    std::vector<Route> routes;
    routes.reserve(paths.size());
    for (const auto& p : paths) routes.push_back(graph.to_route(p));
    return routes;
}

std::string to_edge_list(const LosGraph& graph) {
    std::ostringstream os;
    os.precision(17);
    const auto& dag = graph.dag();
    for (int u = 0; u < dag.vertex_count(); ++u) {
        std::vector<WeightedDag::Edge> edges(dag.out_edges(u).begin(), dag.out_edges(u).end());
        std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) { return a.to < b.to; });
        for (const auto& e : edges) {
            os << u << ' ' << e.to << ' ' << e.weight.primary;
            if (graph.weighting() == EdgeWeighting::cpb_limit) os << ' ' << e.weight.secondary;
            os << '\n';
        }
    }
    return os.str();
}

std::string to_dot(const LosGraph& graph) {
    const auto& scene = graph.scene();
    std::ostringstream os;
    os.precision(6);
    os << "digraph routing {\n  rankdir=LR;\n";
    for (const auto& n : scene.nodes()) {
        std::string label;
        switch (n.kind) {
            case NodeKind::bs: label = "BS"; break;
            case NodeKind::irs: label = "IRS-" + std::to_string(n.id); break;
            case NodeKind::user: label = "User-" + std::to_string(scene.user_index(n.id)); break;
        }
        os << "  " << n.id << " [label=\"" << label << "\"];\n";
    }
    const auto& dag = graph.dag();
    for (int u = 0; u < dag.vertex_count(); ++u)
        for (const auto& e : dag.out_edges(u))
            os << "  " << u << " -> " << e.to << " [label=\"" << e.weight.primary << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace irsroute
