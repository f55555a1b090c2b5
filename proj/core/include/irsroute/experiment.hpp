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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irsroute/scene.hpp"
#include "irsroute/solver.hpp"

namespace irsroute {

// --- scene generators -----------------------------------------------------

struct GridSpec {
    int rows = 0;
    int cols = 0;
    double spacing = 0.0;
    int users = 0;
};

struct RandomSpec {
    int irs = 0;
    int users = 0;
    double width = 0.0;
    double height = 0.0;
    double min_separation = 0.0;
};

struct GeneratorSpec {
    enum class Kind { grid, random } kind = Kind::grid;
    GridSpec grid;
    RandomSpec random;
    SceneParams params;  // radio parameters stamped into the generated document
};

/// "grid(ROWS,COLS,SPACING,USERS)" or "random(J,K,W[xH],MIN_SEP)".
GeneratorSpec parse_generator_spec(std::string_view text);

/// Scene document for a generator spec; identical seeds give identical bytes.
/// Throws SceneError when the spec cannot be met within the retry budget.
std::string generate_scene(const GeneratorSpec& spec, std::uint64_t seed);

// --- experiments ----------------------------------------------------------

enum class SweepVariable { elements, paths };
enum class OutputFormat { table, csv, json };

SweepVariable parse_sweep_variable(std::string_view text);
OutputFormat parse_output_format(std::string_view text);

struct ExperimentConfig {
    std::optional<std::string> scene_path;
    std::optional<std::string> scene_text;  // inline document, takes precedence over the path
    std::optional<std::string> generator;
    std::uint64_t seed = 1;
    SolveParams solve;
    std::optional<int> antennas;  // N override
    std::optional<SweepVariable> sweep;
    std::vector<std::uint64_t> values;
    OutputFormat format = OutputFormat::table;
    bool include_timing = false;  // wall time breaks byte-reproducibility, so it is opt-in
    bool split_power = false;     // divide per-user powers by K (equal power allocation)
};

struct RunRecord {
    std::optional<SweepVariable> sweep;
    std::uint64_t value = 0;
    Algorithm algorithm = Algorithm::proposed;
    std::size_t q = 0;
    int elements = 0;
    int antennas = 0;
    int irs_count = 0;
    RoutingSolution solution;
    std::string error;  // per-point failure inside a sweep
};

struct Report {
    int user_count = 0;
    bool include_timing = false;
    bool split_power = false;
    std::vector<RunRecord> records;
};

/// Resolves the config's scene (inline text, file, or generator) and applies the N override.
Scene resolve_scene(const ExperimentConfig& config);

/// Single solver invocation. Scene and solver errors propagate as exceptions.
Report run_experiment(const ExperimentConfig& config);

/// One record per sweep value, in the given order; per-point errors stay in-row.
Report sweep(const ExperimentConfig& config);

std::string format_report(const Report& report, OutputFormat format);

/// Fixed leading CSV columns; per-user columns power_db_<k>, hops_<k> follow, then "error".
inline constexpr std::string_view kCsvLeadingColumns =
    "sweep,value,algorithm,Q,M,N,feasible,objective,objective_db,cliques_explored";

/// 0 when every record is feasible, 2 when some record is infeasible, 1 when a record failed.
int exit_status(const Report& report);

/// 10 log10(x); -inf for x == 0.
double to_db(double linear);

}  // namespace irsroute
