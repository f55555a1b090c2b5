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

#include "irsroute/solver.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "irsroute/channel.hpp"

namespace irsroute {

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::proposed: return "proposed";
        case Algorithm::sequential: return "sequential";
        case Algorithm::min_pathloss: return "min-pathloss";
        case Algorithm::max_cpb: return "max-cpb";
        case Algorithm::brute_force: return "brute-force";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    std::string n(name);
    std::replace(n.begin(), n.end(), '_', '-');
    for (auto a : {Algorithm::proposed, Algorithm::sequential, Algorithm::min_pathloss, Algorithm::max_cpb,
                   Algorithm::brute_force})
        if (n == to_string(a)) return a;
    throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

double power_from_cost(const Scene& scene, double cost) {
    const double m = scene.params().irs_elements();
    return scene.params().bs_antennas / (m * m) * std::exp(-2.0 * cost);
}

namespace {

using Clock = std::chrono::steady_clock;

Scene effective_scene(const Scene& scene, const SolveParams& params) {
    if (scene.user_count() < 1) throw std::invalid_argument("no users");
    if (params.q < 1) throw std::invalid_argument("Q must be at least 1");
    return params.elements ? scene.with_elements(*params.elements) : scene;
}

void accept_routes(RoutingSolution& sol, const Scene& scene, std::vector<Route> routes) {
    sol.feasible = true;
    sol.routes = std::move(routes);
    sol.powers.clear();
    for (const auto& r : sol.routes) sol.powers.push_back(closed_form_power(scene, r));
    sol.objective = *std::min_element(sol.powers.begin(), sol.powers.end());
}

void mark_infeasible(RoutingSolution& sol, std::string reason) {
    sol.feasible = false;
    sol.routes.clear();
    sol.powers.clear();
    sol.objective = 0.0;
    sol.diagnostics.reason = std::move(reason);
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

RoutingSolution solve_pipeline(const Scene& input, const SolveParams& params, EdgeWeighting weighting,
                               Algorithm algorithm) {
    const auto t0 = Clock::now();
    const Scene scene = effective_scene(input, params);
    RoutingSolution sol;
    sol.algorithm = algorithm;

    const LosGraph graph = build_routing_graph(scene, weighting);
    std::vector<std::vector<Route>> candidates;
    for (int k = 1; k <= scene.user_count(); ++k) {
        candidates.push_back(yen_k_shortest(graph, k, params.q));
        sol.diagnostics.candidate_counts.push_back(candidates.back().size());
    }

    std::optional<PathGraph> pg;
    try {
        pg.emplace(build_path_graph(candidates, scene));
    } catch (const NoCandidates& e) {
        for (int k = 1; k <= scene.user_count(); ++k)
            if (candidates[static_cast<std::size_t>(k - 1)].empty())
                sol.diagnostics.user_notes.push_back("user " + std::to_string(k) + " has no route to the BS");
        mark_infeasible(sol, e.what());
        sol.diagnostics.wall_time_s = seconds_since(t0);
        return sol;
    }

    const auto search = min_max_clique(*pg, {true, params.partition_order});
    sol.diagnostics.cliques_explored = search.explored;
    if (!search.best) {
        mark_infeasible(sol, "no neighbor-disjoint combination among the candidate routes");
        sol.diagnostics.wall_time_s = seconds_since(t0);
        return sol;
    }

    std::vector<Route> routes;
    for (int v : search.best->vertices) routes.push_back(pg->route(v));
    accept_routes(sol, scene, std::move(routes));

    if (weighting == EdgeWeighting::log_gain) {
        const double expected = power_from_cost(scene, search.best->objective.primary);
        if (std::abs(sol.objective - expected) > 1e-9 * expected)
            throw std::logic_error("objective disagrees with the route cost of the selected clique");
    }
    sol.diagnostics.wall_time_s = seconds_since(t0);
    return sol;
}

}  // namespace

RoutingSolution solve_proposed(const Scene& scene, const SolveParams& params) {
    return solve_pipeline(scene, params, EdgeWeighting::log_gain, Algorithm::proposed);
}

RoutingSolution solve_limit_benchmark(const Scene& scene, const SolveParams& params, EdgeWeighting mode) {
    switch (mode) {
        case EdgeWeighting::path_loss: return solve_pipeline(scene, params, mode, Algorithm::min_pathloss);
        case EdgeWeighting::cpb_limit: return solve_pipeline(scene, params, mode, Algorithm::max_cpb);
        case EdgeWeighting::log_gain: break;
    }
    throw std::invalid_argument("limit benchmark needs the path_loss or cpb_limit weighting");
}

RoutingSolution solve_sequential(const Scene& input, const SolveParams& params) {
    const auto t0 = Clock::now();
    const Scene scene = effective_scene(input, params);
    const int k_count = scene.user_count();
    if (k_count > params.max_sequential_users)
        throw std::invalid_argument("sequential update enumerates K! orders; K = " + std::to_string(k_count) +
                                    " exceeds the limit of " + std::to_string(params.max_sequential_users));

    RoutingSolution best;
    best.algorithm = Algorithm::sequential;
    const LosGraph graph = build_routing_graph(scene, EdgeWeighting::log_gain);
    const auto n = static_cast<std::size_t>(scene.node_count());

    std::vector<int> order(static_cast<std::size_t>(k_count));
    std::iota(order.begin(), order.end(), 1);
    std::size_t failed_orders = 0;
    do {
        std::vector<char> blocked(n, 0);
        std::vector<Route> routes(static_cast<std::size_t>(k_count));
        bool ok = true;
        for (int k : order) {
            auto r = dag_shortest_path(graph, k, blocked);
            if (!r) {
                ok = false;
                break;
            }
            std::vector<NodeId> used = r->irs;
            used.push_back(scene.user_node(k));
            for (NodeId u : used) {
                blocked[static_cast<std::size_t>(u)] = 1;
                for (NodeId x = 1; x < scene.node_count(); ++x)
                    if (scene.los(u, x)) blocked[static_cast<std::size_t>(x)] = 1;
            }
            routes[static_cast<std::size_t>(k - 1)] = std::move(*r);
        }
        if (!ok) {
            ++failed_orders;
            continue;
        }
        RoutingSolution cand;
        cand.algorithm = Algorithm::sequential;
        accept_routes(cand, scene, std::move(routes));
        if (!best.feasible || cand.objective > best.objective) best = std::move(cand);
    } while (std::next_permutation(order.begin(), order.end()));

    if (!best.feasible) mark_infeasible(best, "every user order leaves some user without a route");
    best.diagnostics.user_notes.push_back(std::to_string(failed_orders) + " user orders infeasible");
    best.diagnostics.wall_time_s = seconds_since(t0);
    return best;
}

RoutingSolution solve_bruteforce(const Scene& input, const SolveParams& params) {
    const auto t0 = Clock::now();
    const Scene scene = effective_scene(input, params);
    const int k_count = scene.user_count();
    RoutingSolution sol;
    sol.algorithm = Algorithm::brute_force;

    const LosGraph graph = build_routing_graph(scene, EdgeWeighting::log_gain);
    std::uint64_t product = 1;
    for (int k = 1; k <= k_count; ++k) {
        const auto c = count_paths(graph.dag(), 0, scene.user_node(k), params.brute_force_cap + 1);
        sol.diagnostics.candidate_counts.push_back(c);
        if (c > params.brute_force_cap || (c > 0 && product > params.brute_force_cap / c))
            throw std::length_error("brute force cap exceeded: more than " + std::to_string(params.brute_force_cap) +
                                    " route tuples");
        product *= c;
    }
    if (product == 0) {
        for (int k = 1; k <= k_count; ++k)
            if (sol.diagnostics.candidate_counts[static_cast<std::size_t>(k - 1)] == 0)
                sol.diagnostics.user_notes.push_back("user " + std::to_string(k) + " has no route to the BS");
        mark_infeasible(sol, "some user has no route");
        sol.diagnostics.wall_time_s = seconds_since(t0);
        return sol;
    }

    std::vector<std::vector<Route>> routes;
    std::vector<std::vector<double>> powers;
    for (int k = 1; k <= k_count; ++k) {
        routes.push_back(all_routes(graph, k, params.brute_force_cap));
        std::vector<double> p;
        for (const auto& r : routes.back()) p.push_back(closed_form_power(scene, r));
        powers.push_back(std::move(p));
    }

    std::vector<std::size_t> pick(static_cast<std::size_t>(k_count));
    std::optional<std::vector<std::size_t>> best;
    double best_value = 0.0;
    auto search = [&](auto&& self, std::size_t k, double running_min) -> void {
        if (k == pick.size()) {
            ++sol.diagnostics.cliques_explored;
            if (!best || running_min > best_value) {
                best = pick;
                best_value = running_min;
            }
            return;
        }
        for (std::size_t i = 0; i < routes[k].size(); ++i) {
            bool compatible = true;
            for (std::size_t prev = 0; prev < k && compatible; ++prev)
                compatible = neighbor_disjoint(routes[prev][pick[prev]], routes[k][i], scene);
            if (!compatible) continue;
            pick[k] = i;
            self(self, k + 1, std::min(running_min, powers[k][i]));
        }
    };
    search(search, 0, std::numeric_limits<double>::infinity());

    if (!best) {
        mark_infeasible(sol, "no neighbor-disjoint route tuple exists");
    } else {
        std::vector<Route> chosen;
        for (std::size_t k = 0; k < pick.size(); ++k) chosen.push_back(routes[k][(*best)[k]]);
        accept_routes(sol, scene, std::move(chosen));
    }
    sol.diagnostics.wall_time_s = seconds_since(t0);
    return sol;
}

RoutingSolution solve(const Scene& scene, const SolveParams& params) {
    switch (params.algorithm) {
        case Algorithm::proposed: return solve_proposed(scene, params);
        case Algorithm::sequential: return solve_sequential(scene, params);
        case Algorithm::min_pathloss: return solve_limit_benchmark(scene, params, EdgeWeighting::path_loss);
        case Algorithm::max_cpb: return solve_limit_benchmark(scene, params, EdgeWeighting::cpb_limit);
        case Algorithm::brute_force: return solve_bruteforce(scene, params);
    }
    throw std::invalid_argument("unknown algorithm");
}

AuditReport audit_solution(const Scene& scene, const RoutingSolution& solution) {
    AuditReport rep;
    auto fail = [&](std::string s) { rep.violations.push_back(std::move(s)); };
    if (!solution.feasible) {
        if (!solution.routes.empty()) fail("infeasible solution carries routes");
        if (!solution.powers.empty()) fail("infeasible solution carries powers");
        return rep;
    }
    const int k_count = scene.user_count();
    if (static_cast<int>(solution.routes.size()) != k_count) {
        fail("expected " + std::to_string(k_count) + " routes, got " + std::to_string(solution.routes.size()));
        return rep;
    }
    if (solution.powers.size() != solution.routes.size()) fail("power count differs from route count");

    std::vector<std::vector<NodeId>> nodes;  // non-BS nodes of each route
    for (int k = 1; k <= k_count; ++k) {
        const Route& r = solution.routes[static_cast<std::size_t>(k - 1)];
        const std::string tag = "user " + std::to_string(k) + ": ";
        if (r.user != k) fail(tag + "route is labelled for user " + std::to_string(r.user));
        if (r.irs.empty()) fail(tag + "route has no IRS");
        std::set<NodeId> seen;
        for (NodeId a : r.irs) {
            if (a < 1 || a > scene.irs_count()) fail(tag + "node " + std::to_string(a) + " is not an IRS");
            if (!seen.insert(a).second) fail(tag + "IRS " + std::to_string(a) + " used twice");
        }
        std::vector<NodeId> chain{0};
        chain.insert(chain.end(), r.irs.begin(), r.irs.end());
        chain.push_back(scene.irs_count() + k);
        for (std::size_t i = 0; i + 1 < chain.size(); ++i)
            if (scene.valid(chain[i]) && scene.valid(chain[i + 1]) && !scene.los(chain[i], chain[i + 1]))
                fail(tag + "hop " + std::to_string(chain[i]) + " -> " + std::to_string(chain[i + 1]) + " lacks LoS");
        nodes.emplace_back(chain.begin() + 1, chain.end());
    }
    if (!rep.ok()) return rep;

    for (std::size_t a = 0; a < nodes.size(); ++a)
        for (std::size_t b = a + 1; b < nodes.size(); ++b)
            for (NodeId x : nodes[a])
                for (NodeId y : nodes[b])
                    if (x == y || scene.los(x, y))
                        fail("users " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + " are not separated at nodes " +
                             std::to_string(x) + ", " + std::to_string(y));

    if (solution.powers.size() == solution.routes.size()) {
        double lowest = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < solution.routes.size(); ++k) {
            const double p = closed_form_power(scene, solution.routes[k]);
            if (std::abs(p - solution.powers[k]) > 1e-12 * p) fail("user " + std::to_string(k + 1) + " power mismatch");
            lowest = std::min(lowest, p);
        }
        if (std::abs(lowest - solution.objective) > 1e-12 * lowest) fail("objective is not the minimum user power");
    }
    return rep;
}

}  // namespace irsroute
