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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irsroute/clique.hpp"
#include "irsroute/graph.hpp"
#include "irsroute/route.hpp"
#include "irsroute/scene.hpp"

namespace irsroute {

enum class Algorithm { proposed, sequential, min_pathloss, max_cpb, brute_force };

std::string_view to_string(Algorithm a);
/// Accepts "proposed", "sequential", "min-pathloss", "max-cpb", "brute-force"
/// (underscores also accepted).
Algorithm parse_algorithm(std::string_view name);

struct SolveParams {
    std::size_t q = 20;  // candidate routes per user; kAllPaths for all
    Algorithm algorithm = Algorithm::proposed;
    std::optional<int> elements;  // M override
    PartitionOrder partition_order = PartitionOrder::by_user;
    std::uint64_t brute_force_cap = 1'000'000;  // max product of per-user path counts
    int max_sequential_users = 8;
};

struct SolveDiagnostics {
    std::uint64_t cliques_explored = 0;
    std::vector<std::size_t> candidate_counts;  // per user
    double wall_time_s = 0.0;
    /// Why the solution is infeasible (empty when feasible).
    std::string reason;
    /// Per-user notes, e.g. which user lacked candidate routes.
    std::vector<std::string> user_notes;
};

struct RoutingSolution {
    Algorithm algorithm = Algorithm::proposed;
    bool feasible = false;
    std::vector<Route> routes;   // routes[k-1] for user k; empty when infeasible
    std::vector<double> powers;  // |h_{0,J+k}|^2 under optimal beamforming
    double objective = 0.0;      // min of powers
    SolveDiagnostics diagnostics;
};

/// Proposed pipeline: routing DAG, Yen per user, path graph, min-max clique.
RoutingSolution solve_proposed(const Scene& scene, const SolveParams& params);

/// Best over all K! user orders of greedy shortest paths with removal of the
/// chosen nodes and their LoS neighbours.
RoutingSolution solve_sequential(const Scene& scene, const SolveParams& params);

/// Proposed pipeline with M = 1 (path_loss) or M -> infinity (cpb_limit) edge
/// weights; powers are evaluated at the scene's true M.
RoutingSolution solve_limit_benchmark(const Scene& scene, const SolveParams& params, EdgeWeighting mode);

/// Exhaustive search over all route tuples of the routing DAG.
RoutingSolution solve_bruteforce(const Scene& scene, const SolveParams& params);

/// Dispatches on params.algorithm.
RoutingSolution solve(const Scene& scene, const SolveParams& params);

struct AuditReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Rechecks distinct IRSs per route, LoS on every hop, cross-route separation,
/// powers and objective directly from the scene.
AuditReport audit_solution(const Scene& scene, const RoutingSolution& solution);

/// Channel power from a log-gain route cost: (N / M^2) exp(-2 cost).
double power_from_cost(const Scene& scene, double cost);

}  // namespace irsroute
