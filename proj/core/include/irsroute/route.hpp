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

#include <compare>
#include <string>
#include <vector>

#include "irsroute/scene.hpp"

namespace irsroute {

/// Additive path cost compared lexicographically. Ordinary routing weights use
/// only `primary`; the large-M limit weighting stores (-hops, sum ln d).
struct PathCost {
    double primary = 0.0;
    double secondary = 0.0;

    friend PathCost operator+(const PathCost& a, const PathCost& b) {
        return {a.primary + b.primary, a.secondary + b.secondary};
    }
    PathCost& operator+=(const PathCost& o) {
        primary += o.primary;
        secondary += o.secondary;
        return *this;
    }
    friend auto operator<=>(const PathCost&, const PathCost&) = default;
};

/// Beam route for one user: the ordered IRSs between the BS and the user.
struct Route {
    int user = 0;              // 1-based user index k
    std::vector<NodeId> irs;   // a_1 .. a_{N_k}
    PathCost cost;             // sum of routing-graph edge weights
    double distance = 0.0;     // D(route), BS to user along the hops [m]

    int hops() const { return static_cast<int>(irs.size()); }
    /// 0, a_1, ..., a_{N_k}, J+k
    std::vector<NodeId> vertices(const Scene& scene) const;

    friend bool operator==(const Route& a, const Route& b) { return a.user == b.user && a.irs == b.irs; }
};

/// Sum of the hop lengths along 0 -> a_1 -> ... -> user.
double route_distance(const Scene& scene, int user, const std::vector<NodeId>& irs);

/// Empty when the route meets the single-route constraints (distinct IRSs, LoS on
/// every hop); otherwise a description of the first violation.
std::string route_violation(const Scene& scene, const Route& route);

/// "0 -> IRS 3 -> IRS 5 -> user 1"
std::string describe_route(const Route& route);

}  // namespace irsroute
