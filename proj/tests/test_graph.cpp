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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "irsroute/graph.hpp"
#include "support/test_support.hpp"

using namespace irsroute;
namespace t = irsroute::testing;

namespace {

WeightedDag to_dag(const t::PlainDag& g) {
    WeightedDag dag(g.n);
    for (int u = 0; u < g.n; ++u)
        for (int v = 0; v < g.n; ++v)
            if (g.has(u, v)) dag.add_edge(u, v, {g.w[u][v], 0.0});
    return dag;
}

Scene line_scene(std::vector<Node> nodes) { return Scene(t::radio_params(), std::move(nodes)); }

}  // namespace

// --- edge weights ---------------------------------------------------------

TEST(EdgeWeight, FiveMetresAtM400) {
    const Scene s = line_scene({{0, NodeKind::bs, {0, 0, 0}}, {1, NodeKind::irs, {5, 0, 0}}});
    EXPECT_NEAR(edge_weight(s, 0, 1, EdgeWeighting::log_gain).primary, 0.9624083290554456, 1e-12);
}

TEST(EdgeWeight, ThreeMetresAtM800IsNegative) {
    const Scene s = line_scene({{0, NodeKind::bs, {0, 0, 0}}, {1, NodeKind::irs, {3, 0, 0}}}).with_elements(800);
    EXPECT_NEAR(edge_weight(s, 0, 1, EdgeWeighting::log_gain).primary, -0.2415644752704905, 1e-12);
}

TEST(EdgeWeight, BenchmarkWeightings) {
    const Scene s = line_scene({{0, NodeKind::bs, {0, 0, 0}}, {1, NodeKind::irs, {5, 0, 0}}});
    const double beta = s.params().ref_path_gain;
    EXPECT_NEAR(edge_weight(s, 0, 1, EdgeWeighting::path_loss).primary, std::log(5.0 / std::sqrt(beta)), 1e-12);
    const PathCost cpb = edge_weight(s, 0, 1, EdgeWeighting::cpb_limit);
    EXPECT_EQ(cpb.primary, -1.0);
    EXPECT_NEAR(cpb.secondary, std::log(5.0), 1e-15);
}

// --- routing DAG construction ---------------------------------------------

TEST(RoutingGraph, EquidistantIrssHaveNoEdge) {
    const Scene s = line_scene({{0, NodeKind::bs, {0, 0, 0}},
                                {1, NodeKind::irs, {4, 0, 0}},
                                {2, NodeKind::irs, {0, 4, 0}},
                                {3, NodeKind::user, {4, 4, 0}}});
    ASSERT_TRUE(s.los(1, 2));
    const LosGraph g = build_routing_graph(s);
    EXPECT_FALSE(g.dag().weight(1, 2));
    EXPECT_FALSE(g.dag().weight(2, 1));
    EXPECT_TRUE(g.dag().weight(0, 1));
    EXPECT_TRUE(g.dag().weight(1, 3));
}

TEST(RoutingGraph, EdgesFollowLosAndDistanceRule) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto s = t::random_scene(seed, 8, 2, 18.0, 12.0);
        ASSERT_TRUE(s);
        const LosGraph g = build_routing_graph(*s);
        const int n = s->node_count();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                bool want = false;
                if (i == 0 && s->is_irs(j)) want = s->los(0, j);
                if (s->is_irs(i) && s->is_irs(j)) want = s->los(i, j) && s->distance(j, 0) > s->distance(i, 0);
                if (s->is_irs(i) && s->is_user(j)) want = s->los(i, j);
                EXPECT_EQ(g.dag().weight(i, j).has_value(), want) << "seed " << seed << " edge " << i << "->" << j;
            }
        // Never an edge into the BS or out of a user.
        EXPECT_EQ(g.dag().in_degree(0), 0);
        for (int k = 1; k <= s->user_count(); ++k) EXPECT_TRUE(g.dag().out_edges(s->user_node(k)).empty());
    }
}

TEST(RoutingGraph, ExportFormats) {
    const Scene s = line_scene({{0, NodeKind::bs, {0, 0, 0}},
                                {1, NodeKind::irs, {4, 0, 0}},
                                {2, NodeKind::user, {8, 0, 0}}});
    const LosGraph g = build_routing_graph(s);
    const std::string edges = to_edge_list(g);
    EXPECT_EQ(std::count(edges.begin(), edges.end(), '\n'), 2);
    EXPECT_EQ(edges.rfind("0 1 ", 0), 0u);
    const std::string dot = to_dot(g);
    EXPECT_NE(dot.find("label=\"BS\""), std::string::npos);
    EXPECT_NE(dot.find("label=\"IRS-1\""), std::string::npos);
    EXPECT_NE(dot.find("label=\"User-1\""), std::string::npos);
    const std::string cpb = to_edge_list(build_routing_graph(s, EdgeWeighting::cpb_limit));
    EXPECT_NE(cpb.find("0 1 -1 "), std::string::npos);
}

// --- WeightedDag ----------------------------------------------------------

TEST(WeightedDag, RejectsBadEdges) {
    WeightedDag d(3);
    d.add_edge(0, 1, {1, 0});
    d.add_edge(1, 2, {1, 0});
    EXPECT_THROW(d.add_edge(2, 0, {1, 0}), std::invalid_argument);
    EXPECT_THROW(d.add_edge(1, 1, {1, 0}), std::invalid_argument);
    EXPECT_THROW(d.add_edge(0, 1, {2, 0}), std::invalid_argument);
    EXPECT_THROW(d.add_edge(0, 3, {2, 0}), std::invalid_argument);
    EXPECT_EQ(d.edge_count(), 2u);
    EXPECT_EQ(d.topological_order(), (std::vector<int>{0, 1, 2}));
}

// --- shortest path --------------------------------------------------------

TEST(ShortestPath, SingleChain) {
    const Scene s = line_scene({{0, NodeKind::bs, {0, 0, 0}},
                                {1, NodeKind::irs, {4, 0, 0}},
                                {2, NodeKind::user, {8, 0, 0}}});
    const auto r = dag_shortest_path(build_routing_graph(s), 1);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->irs, std::vector<NodeId>{1});
    EXPECT_DOUBLE_EQ(r->distance, 8.0);
}

TEST(ShortestPath, DiamondPicksCheaperBranch) {
    WeightedDag d(4);
    d.add_edge(0, 1, {1.0, 0});
    d.add_edge(1, 3, {1.0, 0});
    d.add_edge(0, 2, {0.5, 0});
    d.add_edge(2, 3, {2.0, 0});
    const auto p = dag_shortest_path(d, 0, 3);
    ASSERT_TRUE(p);
    EXPECT_EQ(p->vertices, (std::vector<int>{0, 1, 3}));
    EXPECT_EQ(p->cost.primary, 2.0);
}

TEST(ShortestPath, NegativeWeightsFavourLongerPaths) {
    WeightedDag d(4);
    d.add_edge(0, 3, {0.5, 0});
    d.add_edge(0, 1, {-0.2, 0});
    d.add_edge(1, 2, {-0.2, 0});
    d.add_edge(2, 3, {0.5, 0});
    EXPECT_EQ(dag_shortest_path(d, 0, 3)->vertices, (std::vector<int>{0, 1, 2, 3}));
}

TEST(ShortestPath, BlockedAndUnreachable) {
    WeightedDag d(4);
    d.add_edge(0, 1, {1.0, 0});
    d.add_edge(1, 3, {1.0, 0});
    d.add_edge(0, 2, {5.0, 0});
    d.add_edge(2, 3, {5.0, 0});
    const std::vector<char> block1{0, 1, 0, 0};
    EXPECT_EQ(dag_shortest_path(d, 0, 3, block1)->vertices, (std::vector<int>{0, 2, 3}));
    const std::vector<char> block_all{0, 1, 1, 0};
    EXPECT_FALSE(dag_shortest_path(d, 0, 3, block_all));
    EXPECT_FALSE(dag_shortest_path(d, 3, 0));
    EXPECT_THROW(dag_shortest_path(d, 0, 3, std::vector<char>{0, 0}), std::invalid_argument);
}

TEST(ShortestPath, MatchesEnumerationOnRandomDags) {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 200; ++t) {
        const auto g = t::random_plain_dag(rng, 10, 0.4, -1.0, 2.0);
        const auto paths = t::enumerate_paths(g, 0, 9);
        const auto p = dag_shortest_path(to_dag(g), 0, 9);
        ASSERT_EQ(p.has_value(), !paths.empty());
        if (!p) continue;
        EXPECT_EQ(p->cost.primary, t::sorted_costs(paths).front());
    }
}

// --- Yen ------------------------------------------------------------------

TEST(Yen, FirstPathIsShortestPath) {
    std::mt19937_64 rng(102);
    for (int t = 0; t < 50; ++t) {
        const auto dag = to_dag(t::random_plain_dag(rng, 9, 0.5, -1.0, 2.0));
        const auto yen = yen_k_shortest(dag, 0, 8, 1);
        const auto sp = dag_shortest_path(dag, 0, 8);
        ASSERT_EQ(yen.empty(), !sp.has_value());
        if (sp) {
            EXPECT_EQ(yen.front().vertices, sp->vertices);
            EXPECT_EQ(yen.front().cost, sp->cost);
        }
    }
}

TEST(Yen, ExhaustsSmallGraph) {
    // 0 -> {1, 2} -> 3 plus the direct 0 -> 3: exactly three paths.
    WeightedDag d(4);
    d.add_edge(0, 1, {1.0, 0});
    d.add_edge(1, 3, {1.0, 0});
    d.add_edge(0, 2, {2.0, 0});
    d.add_edge(2, 3, {2.0, 0});
    d.add_edge(0, 3, {3.0, 0});
    const auto paths = yen_k_shortest(d, 0, 3, 20);
    ASSERT_EQ(paths.size(), 3u);
    EXPECT_EQ(paths[0].vertices, (std::vector<int>{0, 1, 3}));
    EXPECT_EQ(paths[1].vertices, (std::vector<int>{0, 3}));  // ties at cost 3: fewer edges first
    EXPECT_EQ(paths[2].vertices, (std::vector<int>{0, 2, 3}));
    EXPECT_EQ(count_paths(d, 0, 3), 3u);
    EXPECT_TRUE(yen_k_shortest(d, 0, 3, 0).empty());
}

TEST(Yen, FiveCheapestOnTwelveVertexDags) {
    std::mt19937_64 rng(103);
    for (int t = 0; t < 100; ++t) {
        const auto g = t::random_plain_dag(rng, 12, 0.45, -1.0, 2.0);
        const auto want = t::sorted_costs(t::enumerate_paths(g, 0, 11));
        const auto got = yen_k_shortest(to_dag(g), 0, 11, 5);
        ASSERT_EQ(got.size(), std::min<std::size_t>(5, want.size()));
        for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i].cost.primary, want[i]) << "trial " << t;
    }
}

TEST(Yen, ExhaustiveListIsDistinctSortedAndComplete) {
    std::mt19937_64 rng(104);
    for (int t = 0; t < 50; ++t) {
        const auto g = t::random_plain_dag(rng, 9, 0.5, -1.0, 2.0);
        const auto all = t::enumerate_paths(g, 0, 8);
        const auto dag = to_dag(g);
        const auto got = yen_k_shortest(dag, 0, 8, kAllPaths);
        ASSERT_EQ(got.size(), all.size());
        EXPECT_EQ(count_paths(dag, 0, 8), all.size());
        std::set<std::vector<int>> seen;
        for (std::size_t i = 0; i < got.size(); ++i) {
            EXPECT_TRUE(seen.insert(got[i].vertices).second);
            if (i > 0) {
                EXPECT_TRUE(path_precedes(got[i - 1], got[i]));
            }
            EXPECT_EQ(got[i].cost, path_cost(dag, got[i].vertices));
        }
    }
}

TEST(Yen, CountPathsSaturates) {
    WeightedDag d(6);
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v) d.add_edge(u, v, {1.0, 0});
    EXPECT_EQ(count_paths(d, 0, 5), 16u);
    EXPECT_EQ(count_paths(d, 0, 5, 10), 10u);
}

// --- routes on scenes -----------------------------------------------------

TEST(SceneRoutes, AllRoutesAgreesWithYen) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto s = t::random_scene(seed, 8, 2, 16.0, 12.0);
        ASSERT_TRUE(s);
        const LosGraph g = build_routing_graph(*s);
        for (int k = 1; k <= s->user_count(); ++k) {
            const auto all = all_routes(g, k, 100000);
            const auto yen = yen_k_shortest(g, k, kAllPaths);
            ASSERT_EQ(all.size(), yen.size());
            for (std::size_t i = 0; i < all.size(); ++i) {
                EXPECT_EQ(all[i], yen[i]);
                EXPECT_EQ(all[i].cost, yen[i].cost);
                EXPECT_TRUE(route_violation(*s, all[i]).empty());
            }
        }
    }
}

TEST(SceneRoutes, CapAndQValidation) {
    auto s = t::random_scene(3, 8, 1, 14.0, 10.0);
    ASSERT_TRUE(s);
    const LosGraph g = build_routing_graph(*s);
    EXPECT_THROW(yen_k_shortest(g, 1, 0), std::invalid_argument);
    const std::size_t n = count_paths(g.dag(), 0, s->user_node(1));
    if (n > 1) {
        EXPECT_THROW(all_routes(g, 1, n - 1), std::length_error);
    }
}

TEST(SceneRoutes, CpbLimitPrefersMoreHops) {
    // Direct BS -> 1 -> user versus BS -> 1 -> 2 -> user.
    const Scene s = line_scene({{0, NodeKind::bs, {0, 0, 0}},
                                {1, NodeKind::irs, {3, 0, 0}},
                                {2, NodeKind::irs, {6, 0, 0}},
                                {3, NodeKind::user, {9, 0, 0}}});
    EXPECT_EQ(dag_shortest_path(build_routing_graph(s, EdgeWeighting::cpb_limit), 1)->irs,
              (std::vector<NodeId>{1, 2}));
    // Each extra hop costs a full ln(d / sqrt(beta)) without CPB gain.
    EXPECT_EQ(dag_shortest_path(build_routing_graph(s, EdgeWeighting::path_loss), 1)->hops(), 1);
}
