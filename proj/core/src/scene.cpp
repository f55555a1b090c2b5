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

#include "irsroute/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace irsroute {

namespace {

std::string describe(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw SceneError(std::string("non-positive parameter: ") + name);
}

}  // namespace

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::bs: return "BS";
        case NodeKind::irs: return "IRS";
        case NodeKind::user: return "User";
    }
    return "?";
}

Direction direction_angles(const Vec3& delta) {
    const double r = delta.norm();
    if (!(r > 0.0)) throw std::invalid_argument("zero-length direction vector");
    Direction d;
    d.elevation = std::acos(std::clamp(delta.z / r, -1.0, 1.0));
    d.azimuth = std::atan2(delta.y, delta.x);
    return d;
}

Scene::Scene(SceneParams params, std::vector<Node> nodes, std::optional<LosMatrix> los_override)
    : params_(params), nodes_(std::move(nodes)), los_override_(std::move(los_override)) {
    if (params_.bs_antennas < 1) throw SceneError("non-positive parameter: N");
    if (params_.irs_rows < 1) throw SceneError("non-positive parameter: M1");
    if (params_.irs_cols < 1) throw SceneError("non-positive parameter: M2");
    require_positive(params_.wavelength, "lambda");
    require_positive(params_.antenna_spacing, "dA");
    require_positive(params_.element_spacing, "dI");
    require_positive(params_.los_threshold, "los_threshold");
    require_positive(params_.min_distance, "d0");
    if (!(params_.ref_path_gain > 0.0 && params_.ref_path_gain < 1.0))
        throw SceneError("invalid path gain: beta must lie in (0, 1), got " + describe(params_.ref_path_gain));
    const double axis_norm = params_.bs_axis.norm();
    if (!(axis_norm > 0.0)) throw SceneError("non-positive parameter: bs_axis");
    params_.bs_axis = {params_.bs_axis.x / axis_norm, params_.bs_axis.y / axis_norm, params_.bs_axis.z / axis_norm};

    std::sort(nodes_.begin(), nodes_.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < nodes_.size(); ++i)
        if (nodes_[i].id == nodes_[i - 1].id)
            throw SceneError("duplicate node id " + std::to_string(nodes_[i].id));
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].id != static_cast<NodeId>(i))
            throw SceneError("node ids must be consecutive from 0, missing id " + std::to_string(i));

    if (nodes_.empty() || nodes_[0].kind != NodeKind::bs) throw SceneError("node 0 must be the BS");
    std::size_t pos = 1;
    while (pos < nodes_.size() && nodes_[pos].kind == NodeKind::irs) ++pos;
    irs_count_ = static_cast<int>(pos - 1);
    while (pos < nodes_.size() && nodes_[pos].kind == NodeKind::user) ++pos;
    user_count_ = static_cast<int>(pos) - 1 - irs_count_;
    if (pos != nodes_.size())
        throw SceneError("node " + std::to_string(pos) + " (" + std::string(to_string(nodes_[pos].kind)) +
                         ") breaks the BS, IRS..., User... id ordering");

    const std::size_t n = nodes_.size();
    distances_.assign(n * n, 0.0);
    los_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = (nodes_[j].position - nodes_[i].position).norm();
            if (!std::isfinite(d)) throw SceneError("non-finite node position");
            if (d < params_.min_distance)
                throw SceneError("far-field violation: nodes " + std::to_string(i) + " and " + std::to_string(j) +
                                 " are " + describe(d) + " m apart (d0 = " + describe(params_.min_distance) + " m)");
            distances_[i * n + j] = distances_[j * n + i] = d;
        }
    }

    if (los_override_) {
        const auto& m = *los_override_;
        if (m.size() != n) throw SceneError("los_override must be a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
        for (std::size_t i = 0; i < n; ++i) {
            if (m[i].size() != n)
                throw SceneError("los_override must be a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (m[i][i]) throw SceneError("los_override diagonal must be 0");
            for (std::size_t j = 0; j < n; ++j) {
                if (m[i][j] != m[j][i]) throw SceneError("los_override must be symmetric");
                los_[i * n + j] = m[i][j] ? 1 : 0;
            }
        }
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                los_[i * n + j] = (i != j && distances_[i * n + j] <= params_.los_threshold) ? 1 : 0;
    }
}

const Node& Scene::node(NodeId id) const {
    if (!valid(id)) throw std::invalid_argument("unknown node id " + std::to_string(id));
    return nodes_[static_cast<std::size_t>(id)];
}

NodeId Scene::user_node(int k) const {
    if (k < 1 || k > user_count_) throw std::invalid_argument("unknown user index " + std::to_string(k));
    return irs_count_ + k;
}

int Scene::user_index(NodeId id) const {
    if (!is_user(id)) throw std::invalid_argument("node " + std::to_string(id) + " is not a user");
    return id - irs_count_;
}

double Scene::distance(NodeId i, NodeId j) const {
    if (!valid(i) || !valid(j)) throw std::invalid_argument("unknown node id");
    if (i == j) throw std::invalid_argument("distance of a node to itself is undefined");
    return distances_[index(i, j)];
}

bool Scene::los(NodeId i, NodeId j) const {
    if (!valid(i) || !valid(j)) throw std::invalid_argument("unknown node id");
    return los_[index(i, j)] != 0;
}

LinkGeometry Scene::link_geometry(NodeId i, NodeId j) const {
    if (i == j) throw std::invalid_argument("zero-length direction vector");
    const Vec3 delta = node(j).position - node(i).position;
    LinkGeometry g;
    g.distance = distance(i, j);
    g.departure = direction_angles(delta);
    g.arrival = direction_angles(Vec3{} - delta);
    g.bs_aod = std::asin(std::clamp(delta.dot(params_.bs_axis) / g.distance, -1.0, 1.0));
    return g;
}

Scene Scene::with_elements(int elements) const {
    if (elements < 1) throw SceneError("non-positive parameter: M");
    SceneParams p = params_;
    int rows = 1;
    for (int r = 1; static_cast<long long>(r) * r <= elements; ++r)
        if (elements % r == 0) rows = r;
    p.irs_rows = rows;
    p.irs_cols = elements / rows;
    return Scene(p, nodes_, los_override_);
}

Scene Scene::with_antennas(int antennas) const {
    SceneParams p = params_;
    p.bs_antennas = antennas;
    return Scene(p, nodes_, los_override_);
}

// --- document I/O --------------------------------------------------------

namespace {

using nlohmann::json;

NodeKind parse_kind(const std::string& s) {
    std::string lower;
    for (char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "bs") return NodeKind::bs;
    if (lower == "irs") return NodeKind::irs;
    if (lower == "user") return NodeKind::user;
    throw SceneError("malformed document: unknown node kind '" + s + "'");
}

template <typename T>
T read_number(const json& obj, const char* key, std::optional<T> fallback = std::nullopt) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        if (fallback) return *fallback;
        throw SceneError(std::string("malformed document: missing params.") + key);
    }
    if (!it->is_number()) throw SceneError(std::string("malformed document: params.") + key + " must be a number");
    if constexpr (std::is_integral_v<T>) {
        if (!it->is_number_integer()) throw SceneError(std::string("malformed document: params.") + key + " must be an integer");
    }
    return it->get<T>();
}

Vec3 read_vec3(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 3)
        throw SceneError("malformed document: " + what + " must be a 3-element array");
    for (const auto& v : j)
        if (!v.is_number()) throw SceneError("malformed document: " + what + " must hold numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

Scene load_scene(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SceneError(std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object()) throw SceneError("malformed document: top level must be an object");
    if (!doc.contains("params") || !doc["params"].is_object())
        throw SceneError("malformed document: missing params object");
    if (!doc.contains("nodes") || !doc["nodes"].is_array())
        throw SceneError("malformed document: missing nodes array");

    const json& pj = doc["params"];
    SceneParams p;
    p.bs_antennas = read_number<int>(pj, "N");
    p.irs_rows = read_number<int>(pj, "M1");
    p.irs_cols = read_number<int>(pj, "M2");
    p.wavelength = read_number<double>(pj, "lambda");
    p.antenna_spacing = read_number<double>(pj, "dA", p.wavelength / 2.0);
    p.element_spacing = read_number<double>(pj, "dI", p.wavelength / 2.0);
    p.ref_path_gain = read_number<double>(pj, "beta", free_space_reference_gain(p.wavelength));
    p.los_threshold = read_number<double>(pj, "los_threshold", 6.4);
    p.min_distance = read_number<double>(pj, "d0", 3.0);
    if (pj.contains("bs_axis")) p.bs_axis = read_vec3(pj["bs_axis"], "params.bs_axis");

    std::vector<Node> nodes;
    for (const auto& nj : doc["nodes"]) {
        if (!nj.is_object() || !nj.contains("id") || !nj.contains("kind") || !nj.contains("pos"))
            throw SceneError("malformed document: every node needs id, kind and pos");
        if (!nj["id"].is_number_integer() || !nj["kind"].is_string())
            throw SceneError("malformed document: node id must be an integer and kind a string");
        Node n;
        n.id = nj["id"].get<int>();
        n.kind = parse_kind(nj["kind"].get<std::string>());
        n.position = read_vec3(nj["pos"], "node " + std::to_string(n.id) + " pos");
        nodes.push_back(n);
    }

    std::optional<LosMatrix> override_matrix;
    if (doc.contains("los_override") && !doc["los_override"].is_null()) {
        const json& mj = doc["los_override"];
        if (!mj.is_array()) throw SceneError("malformed document: los_override must be a matrix");
        LosMatrix m;
        for (const auto& row : mj) {
            if (!row.is_array()) throw SceneError("malformed document: los_override must be a matrix");
            std::vector<bool> r;
            for (const auto& v : row) {
                if (!v.is_number_integer() && !v.is_boolean())
                    throw SceneError("malformed document: los_override entries must be 0 or 1");
                const int value = v.is_boolean() ? (v.get<bool>() ? 1 : 0) : v.get<int>();
                if (value != 0 && value != 1) throw SceneError("malformed document: los_override entries must be 0 or 1");
                r.push_back(value == 1);
            }
            m.push_back(std::move(r));
        }
        override_matrix = std::move(m);
    }
    return Scene(p, std::move(nodes), std::move(override_matrix));
}

Scene load_scene_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SceneError("cannot open scene file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_scene(ss.str());
}

std::string dump_scene(const Scene& scene) {
    nlohmann::ordered_json doc;
    const auto& p = scene.params();
    doc["params"] = {
        {"N", p.bs_antennas}, {"M1", p.irs_rows}, {"M2", p.irs_cols},
        {"dA", p.antenna_spacing}, {"dI", p.element_spacing}, {"lambda", p.wavelength},
        {"beta", p.ref_path_gain}, {"los_threshold", p.los_threshold}, {"d0", p.min_distance},
        {"bs_axis", {p.bs_axis.x, p.bs_axis.y, p.bs_axis.z}},
    };
    auto nodes = nlohmann::ordered_json::array();
    for (const auto& n : scene.nodes()) {
        nodes.push_back({{"id", n.id},
                         {"kind", std::string(to_string(n.kind))},
                         {"pos", {n.position.x, n.position.y, n.position.z}}});
    }
    doc["nodes"] = std::move(nodes);
    if (const auto& m = scene.los_override()) {
        auto rows = nlohmann::ordered_json::array();
        for (const auto& r : *m) {
            auto row = nlohmann::ordered_json::array();
            for (bool v : r) row.push_back(v ? 1 : 0);
            rows.push_back(std::move(row));
        }
        doc["los_override"] = std::move(rows);
    }
    return doc.dump(2) + "\n";
}

}  // namespace irsroute
