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

#include <benchmark/benchmark.h>

#include "irsroute/channel.hpp"
#include "irsroute/clique.hpp"
#include "irsroute/experiment.hpp"
#include "irsroute/graph.hpp"
#include "irsroute/solver.hpp"

using namespace irsroute;

namespace {

const Scene& factory() {
    static const Scene s = load_scene_file(IRSROUTE_DATA_DIR "/scenes/factory.json").with_elements(800);
    return s;
}

// Larger generated scene for the search benchmarks.
const Scene& random_field() {
    static const Scene s = load_scene(generate_scene(parse_generator_spec("random(40,4,30x30,3)"), 3));
    return s;
}

std::vector<std::vector<Route>> candidates(const Scene& s, std::size_t q) {
    const LosGraph g = build_routing_graph(s);
    std::vector<std::vector<Route>> c;
    for (int k = 1; k <= s.user_count(); ++k) c.push_back(yen_k_shortest(g, k, q));
    return c;
}

void BM_RoutingGraph(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_routing_graph(random_field()));
}
BENCHMARK(BM_RoutingGraph);

void BM_Yen(benchmark::State& state) {
    const LosGraph g = build_routing_graph(random_field());
    const auto q = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        for (int k = 1; k <= random_field().user_count(); ++k) benchmark::DoNotOptimize(yen_k_shortest(g, k, q));
}
BENCHMARK(BM_Yen)->Arg(1)->Arg(5)->Arg(10)->Arg(20);

void BM_CliqueSearch(benchmark::State& state) {
    const auto q = static_cast<std::size_t>(state.range(0));
    const bool prune = state.range(1) != 0;
    const Scene& s = factory();
    const PathGraph pg = build_path_graph(candidates(s, q), s);
    std::uint64_t explored = 0;
    for (auto _ : state) {
        const auto r = min_max_clique(pg, {prune, PartitionOrder::by_user});
        explored = r.explored;
        benchmark::DoNotOptimize(r);
    }
    state.counters["explored"] = static_cast<double>(explored);
}
BENCHMARK(BM_CliqueSearch)->ArgsProduct({{1, 5, 10, 20}, {0, 1}});

void BM_SolveProposed(benchmark::State& state) {
    SolveParams p;
    p.q = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(solve_proposed(factory(), p));
}
BENCHMARK(BM_SolveProposed)->Arg(1)->Arg(20);

void BM_SolveSequential(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(solve_sequential(factory(), SolveParams{}));
}
BENCHMARK(BM_SolveSequential);

const Route& factory_route() {
    static const Route r = solve_proposed(factory(), SolveParams{}).routes.front();
    return r;
}

void BM_ClosedFormPower(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(closed_form_power(factory(), factory_route()));
}
BENCHMARK(BM_ClosedFormPower);

void BM_DirectCascade(benchmark::State& state) {
    const auto& s = factory();
    const auto& r = factory_route();
    const auto phases = optimal_phase_shifts(s, r);
    const auto w = mrt_precoder(s, r);
    for (auto _ : state) benchmark::DoNotOptimize(end_to_end_channel(s, r, phases, w));
}
BENCHMARK(BM_DirectCascade);

}  // namespace

BENCHMARK_MAIN();
