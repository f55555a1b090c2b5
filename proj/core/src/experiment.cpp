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

#include "irsroute/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <regex>
#include <sstream>

#include "json.hpp"

namespace irsroute {

double to_db(double linear) {
    if (linear <= 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(linear);
}

// --- generators -----------------------------------------------------------

namespace {

std::vector<std::string> split_args(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_number(const std::string& s, std::string_view what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("generator spec: bad " + std::string(what) + " '" + s + "'");
    }
}

int parse_count(const std::string& s, std::string_view what) {
    const double v = parse_number(s, what);
    if (v != std::floor(v) || v < 0 || v > 1e6)
        throw std::invalid_argument("generator spec: " + std::string(what) + " must be a non-negative integer");
    return static_cast<int>(v);
}

double round_mm(double v) { return std::round(v * 1000.0) / 1000.0; }

}  // namespace

GeneratorSpec parse_generator_spec(std::string_view text) {
    static const std::regex pattern(R"(^\s*(grid|random)\s*\((.*)\)\s*$)");
    const std::string s(text);
    std::smatch m;
    if (!std::regex_match(s, m, pattern))
        throw std::invalid_argument("generator spec must be grid(ROWS,COLS,SPACING,USERS) or random(J,K,W[xH],MIN_SEP)");
    const auto args = split_args(m[2].str());
    GeneratorSpec spec;
    if (m[1] == "grid") {
        if (args.size() != 4) throw std::invalid_argument("grid(ROWS,COLS,SPACING,USERS) takes 4 arguments");
        spec.kind = GeneratorSpec::Kind::grid;
        spec.grid = {parse_count(args[0], "rows"), parse_count(args[1], "cols"), parse_number(args[2], "spacing"),
                     parse_count(args[3], "users")};
        if (spec.grid.rows < 1 || spec.grid.cols < 1 || !(spec.grid.spacing > 0.0))
            throw std::invalid_argument("grid needs positive rows, cols and spacing");
    } else {
        if (args.size() != 4) throw std::invalid_argument("random(J,K,W[xH],MIN_SEP) takes 4 arguments");
        spec.kind = GeneratorSpec::Kind::random;
        spec.random.irs = parse_count(args[0], "J");
        spec.random.users = parse_count(args[1], "K");
        const auto x = args[2].find_first_of("xX");
        spec.random.width = parse_number(args[2].substr(0, x), "width");
        spec.random.height = x == std::string::npos ? spec.random.width : parse_number(args[2].substr(x + 1), "height");
        spec.random.min_separation = parse_number(args[3], "min_sep");
        if (!(spec.random.width > 0.0) || !(spec.random.height > 0.0))
            throw std::invalid_argument("random needs a positive area");
    }
    return spec;
}

std::string generate_scene(const GeneratorSpec& spec, std::uint64_t seed) {
    const SceneParams& params = spec.params;
    std::vector<Node> nodes;

    if (spec.kind == GeneratorSpec::Kind::grid) {
        const auto& g = spec.grid;
        if (g.spacing < params.min_distance)
            throw SceneError("generator spec unsatisfiable: grid spacing below d0 (seed " + std::to_string(seed) +
                             ", attempts 1)");
        if (g.spacing > params.los_threshold)
            throw SceneError("generator spec unsatisfiable: no IRS within LoS range of the BS (seed " +
                             std::to_string(seed) + ", attempts 1)");
        nodes.push_back({0, NodeKind::bs, {0.0, 0.0, 0.0}});
        int id = 1;
        for (int r = 0; r < g.rows; ++r)
            for (int c = 0; c < g.cols; ++c)
                nodes.push_back({id++, NodeKind::irs, {(c + 1) * g.spacing, r * g.spacing, 0.0}});
        for (int u = 0; u < g.users; ++u)
            nodes.push_back({id++, NodeKind::user, {(g.cols + 1) * g.spacing, u * g.spacing, 0.0}});
        return dump_scene(Scene(params, std::move(nodes)));
    }

    const auto& rs = spec.random;
    const double sep = std::max(rs.min_separation, params.min_distance);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(0.0, rs.width);
    std::uniform_real_distribution<double> uy(0.0, rs.height);
    constexpr int scene_attempts = 100;
    constexpr int point_attempts = 1000;

    for (int attempt = 1; attempt <= scene_attempts; ++attempt) {
        nodes.clear();
        nodes.push_back({0, NodeKind::bs, {0.0, round_mm(rs.height / 2.0), 0.0}});
        bool placed_all = true;
        const int total = rs.irs + rs.users;
        for (int i = 0; i < total && placed_all; ++i) {
            placed_all = false;
            for (int t = 0; t < point_attempts; ++t) {
                const Vec3 p{round_mm(ux(rng)), round_mm(uy(rng)), 0.0};
                const bool clear = std::all_of(nodes.begin(), nodes.end(),
                                               [&](const Node& n) { return (n.position - p).norm() >= sep; });
                if (clear) {
                    nodes.push_back({i + 1, i < rs.irs ? NodeKind::irs : NodeKind::user, p});
                    placed_all = true;
                    break;
                }
            }
        }
        if (!placed_all) continue;
        const bool bs_adjacent = std::any_of(nodes.begin() + 1, nodes.begin() + 1 + rs.irs, [&](const Node& n) {
            return (n.position - nodes.front().position).norm() <= params.los_threshold;
        });
        if (!bs_adjacent) continue;
        return dump_scene(Scene(params, nodes));
    }
    throw SceneError("generator spec unsatisfiable after " + std::to_string(scene_attempts) + " attempts (seed " +
                     std::to_string(seed) + ")");
}

// --- experiments ----------------------------------------------------------

SweepVariable parse_sweep_variable(std::string_view text) {
    if (text == "M" || text == "m") return SweepVariable::elements;
    if (text == "Q" || text == "q") return SweepVariable::paths;
    throw std::invalid_argument("sweep variable must be M or Q");
}

OutputFormat parse_output_format(std::string_view text) {
    if (text == "table") return OutputFormat::table;
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    throw std::invalid_argument("output format must be table, csv or json");
}

Scene resolve_scene(const ExperimentConfig& config) {
    std::optional<Scene> scene;
    if (config.scene_text) {
        scene.emplace(load_scene(*config.scene_text));
    } else if (config.scene_path) {
        scene.emplace(load_scene_file(*config.scene_path));
    } else if (config.generator) {
        scene.emplace(load_scene(generate_scene(parse_generator_spec(*config.generator), config.seed)));
    } else {
        throw std::invalid_argument("no scene given: use a scene file or a generator spec");
    }
    if (config.antennas) return scene->with_antennas(*config.antennas);
    return *scene;
}

namespace {

RunRecord make_record(const Scene& scene, const SolveParams& params) {
    RunRecord rec;
    rec.algorithm = params.algorithm;
    rec.q = params.q;
    rec.elements = params.elements.value_or(scene.params().irs_elements());
    rec.antennas = scene.params().bs_antennas;
    rec.irs_count = scene.irs_count();
    return rec;
}

}  // namespace

Report run_experiment(const ExperimentConfig& config) {
    const Scene scene = resolve_scene(config);
    if (scene.user_count() < 1) throw std::invalid_argument("no users");
    Report report;
    report.user_count = scene.user_count();
    report.include_timing = config.include_timing;
    report.split_power = config.split_power;
    RunRecord rec = make_record(scene, config.solve);
    rec.solution = solve(scene, config.solve);
    report.records.push_back(std::move(rec));
    return report;
}

Report sweep(const ExperimentConfig& config) {
    if (!config.sweep) return run_experiment(config);
    if (config.values.empty()) throw std::invalid_argument("sweep needs at least one value");
    for (std::size_t i = 0; i < config.values.size(); ++i) {
        if (config.values[i] == 0) throw std::invalid_argument("sweep values must be positive");
        if (i > 0 && config.values[i] <= config.values[i - 1])
            throw std::invalid_argument("sweep values must be strictly increasing");
    }
    const Scene scene = resolve_scene(config);
    if (scene.user_count() < 1) throw std::invalid_argument("no users");

    Report report;
    report.user_count = scene.user_count();
    report.include_timing = config.include_timing;
    report.split_power = config.split_power;
    for (auto value : config.values) {
        SolveParams params = config.solve;
        if (*config.sweep == SweepVariable::elements) {
            params.elements = static_cast<int>(value);
        } else {
            params.q = static_cast<std::size_t>(value);
        }
        RunRecord rec = make_record(scene, params);
        rec.sweep = config.sweep;
        rec.value = value;
        try {
            rec.solution = solve(scene, params);
        } catch (const std::exception& e) {
            rec.solution.algorithm = params.algorithm;
            rec.error = e.what();
        }
        report.records.push_back(std::move(rec));
    }
    return report;
}

int exit_status(const Report& report) {
    int status = 0;
    for (const auto& r : report.records) {
        if (!r.error.empty()) return 1;
        if (!r.solution.feasible) status = 2;
    }
    return status;
}

// --- formatting -----------------------------------------------------------

namespace {

std::string num(double v) {
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

std::string q_text(std::size_t q) { return q == kAllPaths ? "all" : std::to_string(q); }

std::string sweep_name(const RunRecord& r) {
    if (!r.sweep) return "";
    return *r.sweep == SweepVariable::elements ? "M" : "Q";
}

double reported_power(const Report& rep, double p) { return rep.split_power ? p / rep.user_count : p; }

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string format_csv(const Report& rep) {
    std::ostringstream os;
    os << kCsvLeadingColumns;
    for (int k = 1; k <= rep.user_count; ++k) os << ",power_db_" << k;
    for (int k = 1; k <= rep.user_count; ++k) os << ",hops_" << k;
    if (rep.include_timing) os << ",wall_time_s";
    os << ",error\n";
    for (const auto& r : rep.records) {
        const auto& s = r.solution;
        os << sweep_name(r) << ',' << (r.sweep ? std::to_string(r.value) : "") << ',' << to_string(r.algorithm) << ','
           << q_text(r.q) << ',' << r.elements << ',' << r.antennas << ',' << (s.feasible ? 1 : 0) << ',';
        if (s.feasible) {
            const double obj = reported_power(rep, s.objective);
            os << num(obj) << ',' << num(to_db(obj));
        } else {
            os << ',';
        }
        os << ',' << s.diagnostics.cliques_explored;
        for (int k = 0; k < rep.user_count; ++k) {
            os << ',';
            if (s.feasible) os << num(to_db(reported_power(rep, s.powers[static_cast<std::size_t>(k)])));
        }
        for (int k = 0; k < rep.user_count; ++k) {
            os << ',';
            if (s.feasible) os << s.routes[static_cast<std::size_t>(k)].hops();
        }
        if (rep.include_timing) os << ',' << num(s.diagnostics.wall_time_s);
        os << ',' << csv_escape(r.error.empty() ? s.diagnostics.reason : r.error) << '\n';
    }
    return os.str();
}

nlohmann::ordered_json record_json(const Report& rep, const RunRecord& r) {
    using nlohmann::ordered_json;
    const auto& s = r.solution;
    ordered_json j;
    ordered_json params = {{"algorithm", std::string(to_string(r.algorithm))},
                           {"Q", r.q == kAllPaths ? ordered_json("all") : ordered_json(r.q)},
                           {"M", r.elements},
                           {"N", r.antennas}};
    j["params"] = std::move(params);
    if (r.sweep) j["sweep"] = {{"variable", sweep_name(r)}, {"value", r.value}};
    j["feasible"] = s.feasible;
    if (s.feasible) {
        const double obj = reported_power(rep, s.objective);
        j["objective"] = obj;
        j["objective_db"] = to_db(obj);
    } else {
        j["objective"] = nullptr;
        j["objective_db"] = nullptr;
    }
    auto users = ordered_json::array();
    for (std::size_t k = 0; k < s.routes.size(); ++k) {
        const auto& route = s.routes[k];
        std::vector<NodeId> ids{0};
        ids.insert(ids.end(), route.irs.begin(), route.irs.end());
        ids.push_back(r.irs_count + route.user);
        const double p = reported_power(rep, s.powers[k]);
        users.push_back({{"user", route.user},
                         {"power", p},
                         {"power_db", to_db(p)},
                         {"hops", route.hops()},
                         {"route", ids},
                         {"route_text", describe_route(route)}});
    }
    j["users"] = std::move(users);
    j["cliques_explored"] = s.diagnostics.cliques_explored;
    j["candidate_counts"] = s.diagnostics.candidate_counts;
    if (!s.diagnostics.reason.empty()) j["reason"] = s.diagnostics.reason;
    if (!s.diagnostics.user_notes.empty()) j["notes"] = s.diagnostics.user_notes;
    if (!r.error.empty()) j["error"] = r.error;
    if (rep.include_timing) j["wall_time_s"] = s.diagnostics.wall_time_s;
    return j;
}

std::string format_json(const Report& rep) {
    nlohmann::ordered_json doc;
    doc["users"] = rep.user_count;
    doc["power_split"] = rep.split_power;
    auto records = nlohmann::ordered_json::array();
    for (const auto& r : rep.records) records.push_back(record_json(rep, r));
    doc["records"] = std::move(records);
    return doc.dump(2) + "\n";
}

std::string format_table(const Report& rep) {
    std::ostringstream os;
    for (const auto& r : rep.records) {
        const auto& s = r.solution;
        if (r.sweep) os << "== " << sweep_name(r) << " = " << r.value << " ==\n";
        os << "algorithm " << to_string(r.algorithm) << "  Q " << q_text(r.q) << "  M " << r.elements << "  N "
           << r.antennas << '\n';
        if (!r.error.empty()) {
            os << "error: " << r.error << "\n\n";
            continue;
        }
        if (!s.feasible) {
            os << "infeasible: " << s.diagnostics.reason << '\n';
            for (const auto& note : s.diagnostics.user_notes) os << "  " << note << '\n';
        } else {
            const double obj = reported_power(rep, s.objective);
            os << "objective " << num(obj) << " (" << std::fixed << std::setprecision(2) << to_db(obj) << " dB)\n";
            os.unsetf(std::ios::floatfield);
            for (std::size_t k = 0; k < s.routes.size(); ++k) {
                os << "  user " << s.routes[k].user << "  " << std::fixed << std::setprecision(2)
                   << to_db(reported_power(rep, s.powers[k])) << " dB  hops " << s.routes[k].hops() << "  "
                   << describe_route(s.routes[k]) << '\n';
                os.unsetf(std::ios::floatfield);
            }
        }
        os << "cliques explored " << s.diagnostics.cliques_explored << '\n';
        if (rep.include_timing) os << "wall time " << num(s.diagnostics.wall_time_s) << " s\n";
        os << '\n';
    }
    return os.str();
}

}  // namespace

std::string format_report(const Report& report, OutputFormat format) {
    switch (format) {
        case OutputFormat::table: return format_table(report);
        case OutputFormat::csv: return format_csv(report);
        case OutputFormat::json: return format_json(report);
    }
    return {};
}

}  // namespace irsroute
