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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "irsroute/experiment.hpp"
#include "irsroute/graph.hpp"

namespace {

std::vector<std::uint64_t> parse_values(const std::string& list) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        const auto v = std::stoull(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad sweep value '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::size_t parse_paths(const std::string& text) {
    if (text == "all") return irsroute::kAllPaths;
    std::size_t used = 0;
    const auto v = std::stoull(text, &used);
    if (used != text.size() || v == 0) throw std::invalid_argument("--paths takes a positive count or 'all'");
    return v;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

int report_error(const std::string& kind, const std::string& message, const std::string& path) {
    nlohmann::ordered_json err;
    err["error"] = {{"kind", kind}, {"message", message}};
    try {
        write_output(err.dump() + "\n", path);
    } catch (const std::exception&) {
        std::cout << err.dump() << '\n';
    }
    std::cerr << "irsroute: " << message << '\n';
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cooperative multi-beam routing over multi-IRS LoS scenes"};

    std::string scene_path, generator, algorithm = "proposed", paths = "20", sweep_var, values, output = "table",
                out_path, export_graph;
    std::uint64_t seed = 1;
    int elements = 0, antennas = 0;
    bool emit_scene = false, timing = false, split_power = false, smallest_first = false;

    auto* scene_opt = app.add_option("--scene", scene_path, "Scene document (JSON)");
    auto* gen_opt = app.add_option("--generate", generator, "Generator spec: grid(R,C,S,U) or random(J,K,W[xH],SEP)");
    scene_opt->excludes(gen_opt);
    app.add_option("--seed", seed, "Seed for --generate");
    app.add_option("--algorithm", algorithm, "proposed|sequential|min-pathloss|max-cpb|brute-force")
        ->check(CLI::IsMember({"proposed", "sequential", "min-pathloss", "max-cpb", "brute-force"}));
    app.add_option("--paths", paths, "Candidate routes per user (Q), or 'all'");
    app.add_option("--elements", elements, "Override IRS element count M")->check(CLI::PositiveNumber);
    app.add_option("--antennas", antennas, "Override BS antenna count N")->check(CLI::PositiveNumber);
    auto* sweep_opt = app.add_option("--sweep", sweep_var, "Sweep variable")->check(CLI::IsMember({"M", "Q"}));
    app.add_option("--values", values, "Comma-separated sweep values")->needs(sweep_opt);
    app.add_option("--output", output, "table|csv|json")->check(CLI::IsMember({"table", "csv", "json"}));
    app.add_option("--out", out_path, "Write the report to a file instead of stdout");
    app.add_flag("--emit-scene", emit_scene, "Print the resolved scene document and exit");
    app.add_option("--export-graph", export_graph, "Print the routing graph (edges|dot) and exit")
        ->check(CLI::IsMember({"edges", "dot"}));
    app.add_flag("--timing", timing, "Include wall time in the report");
    app.add_flag("--split-power", split_power, "Report per-user powers after equal power split (divide by K)");
    app.add_flag("--smallest-partition-first", smallest_first, "Process users with fewest candidates first");

    CLI11_PARSE(app, argc, argv);

    try {
        irsroute::ExperimentConfig cfg;
        if (!scene_path.empty()) cfg.scene_path = scene_path;
        if (!generator.empty()) cfg.generator = generator;
        cfg.seed = seed;
        cfg.solve.algorithm = irsroute::parse_algorithm(algorithm);
        cfg.solve.q = parse_paths(paths);
        if (elements > 0) cfg.solve.elements = elements;
        if (antennas > 0) cfg.antennas = antennas;
        if (smallest_first) cfg.solve.partition_order = irsroute::PartitionOrder::smallest_first;
        cfg.format = irsroute::parse_output_format(output);
        cfg.include_timing = timing;
        cfg.split_power = split_power;
        if (!sweep_var.empty()) {
            cfg.sweep = irsroute::parse_sweep_variable(sweep_var);
            cfg.values = parse_values(values);
        }

        if (emit_scene || !export_graph.empty()) {
            auto scene = irsroute::resolve_scene(cfg);
            if (cfg.solve.elements) scene = scene.with_elements(*cfg.solve.elements);
            if (emit_scene) {
                write_output(irsroute::dump_scene(scene), out_path);
            } else {
                const auto graph = irsroute::build_routing_graph(scene);
                write_output(export_graph == "dot" ? irsroute::to_dot(graph) : irsroute::to_edge_list(graph), out_path);
            }
            return 0;
        }

        const auto report = cfg.sweep ? irsroute::sweep(cfg) : irsroute::run_experiment(cfg);
        write_output(irsroute::format_report(report, cfg.format), out_path);
        return irsroute::exit_status(report);
    } catch (const irsroute::SceneError& e) {
        return report_error("scene", e.what(), out_path);
    } catch (const std::exception& e) {
        return report_error("error", e.what(), out_path);
    }
}
