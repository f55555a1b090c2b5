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

#include "irsroute/route.hpp"

#include <algorithm>

namespace irsroute {

std::vector<NodeId> Route::vertices(const Scene& scene) const {
    std::vector<NodeId> v;
    v.reserve(irs.size() + 2);
    v.push_back(0);
    v.insert(v.end(), irs.begin(), irs.end());
    v.push_back(scene.user_node(user));
    return v;
}

double route_distance(const Scene& scene, int user, const std::vector<NodeId>& irs) {
    double total = 0.0;
    NodeId prev = 0;
    for (NodeId a : irs) {
        total += scene.distance(prev, a);
        prev = a;
    }
    return total + scene.distance(prev, scene.user_node(user));
}

std::string route_violation(const Scene& scene, const Route& route) {
    if (route.user < 1 || route.user > scene.user_count())
        return "unknown user " + std::to_string(route.user);
    if (route.irs.empty()) return "route for user " + std::to_string(route.user) + " has no IRS";
    for (NodeId a : route.irs)
        if (!scene.is_irs(a)) return "node " + std::to_string(a) + " is not an IRS";
    std::vector<NodeId> sorted = route.irs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return "route for user " + std::to_string(route.user) + " visits an IRS twice";
    const auto v = route.vertices(scene);
    for (std::size_t n = 0; n + 1 < v.size(); ++n)
        if (!scene.los(v[n], v[n + 1]))
            return "no LoS between nodes " + std::to_string(v[n]) + " and " + std::to_string(v[n + 1]);
    return {};
}

std::string describe_route(const Route& route) {
    std::string s = "0";
    for (NodeId a : route.irs) s += " -> IRS " + std::to_string(a);
    s += " -> user " + std::to_string(route.user);
    return s;
}

}  // namespace irsroute
