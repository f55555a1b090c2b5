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

#include <filesystem>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace irsroute {

/// Node index in the routing scene: 0 is the BS, 1..J the IRSs, J+1..J+K the users.
using NodeId = int;

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const;
};

enum class NodeKind { bs, irs, user };

std::string_view to_string(NodeKind kind);

struct Node {
    NodeId id = 0;
    NodeKind kind = NodeKind::irs;
    Vec3 position;
};

/// LoS reference path gain (lambda / 4 pi)^2 at 1 m.
constexpr double free_space_reference_gain(double wavelength) {
    const double r = wavelength / (4.0 * std::numbers::pi);
    return r * r;
}

struct SceneParams {
    int bs_antennas = 20;         // N
    int irs_rows = 20;            // M1
    int irs_cols = 20;            // M2
    double antenna_spacing = 0.03;  // d_A [m]
    double element_spacing = 0.03;  // d_I [m]
    double wavelength = 0.06;       // lambda [m]
    double ref_path_gain = free_space_reference_gain(0.06);  // beta
    double los_threshold = 6.4;     // [m]
    double min_distance = 3.0;      // d0 [m]
    /// Unit vector along the BS ULA; the AoD is measured from the broadside
    /// plane, so the default puts the broadside along +y.
    Vec3 bs_axis{1.0, 0.0, 0.0};

    int irs_elements() const { return irs_rows * irs_cols; }
};

/// Azimuth is measured in the x-y plane from the +x axis, elevation from the +z axis.
struct Direction {
    double azimuth = 0.0;
    double elevation = 0.0;
};

struct LinkGeometry {
    double distance = 0.0;
    /// ULA angle of departure, sin(aod) = <dir, bs_axis>; only meaningful when the transmitter is the BS.
    double bs_aod = 0.0;
    Direction departure;  // at the transmitter, toward the receiver
    Direction arrival;    // at the receiver, toward the transmitter
};

class SceneError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Square symmetric 0/1 matrix replacing the distance-threshold LoS rule.
using LosMatrix = std::vector<std::vector<bool>>;

/// Immutable, validated description of a deployment. Pairwise distances and
/// LoS indicators are precomputed at construction.
class Scene {
public:
    /// Nodes may be given in any order; they are sorted by id and validated.
    Scene(SceneParams params, std::vector<Node> nodes, std::optional<LosMatrix> los_override = std::nullopt);

    const SceneParams& params() const { return params_; }
    std::span<const Node> nodes() const { return nodes_; }
    const Node& node(NodeId id) const;

    int irs_count() const { return irs_count_; }
    int user_count() const { return user_count_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }

    /// Node id of user k (1-based).
    NodeId user_node(int k) const;
    /// User index (1-based) of a user node.
    int user_index(NodeId id) const;

    NodeKind kind(NodeId id) const { return node(id).kind; }
    bool is_irs(NodeId id) const { return id >= 1 && id <= irs_count_; }
    bool is_user(NodeId id) const { return id > irs_count_ && id < node_count(); }
    bool valid(NodeId id) const { return id >= 0 && id < node_count(); }

    /// Throws std::invalid_argument for i == j or unknown ids.
    double distance(NodeId i, NodeId j) const;
    /// l_{i,j}; false on the diagonal.
    bool los(NodeId i, NodeId j) const;
    LinkGeometry link_geometry(NodeId i, NodeId j) const;

    const std::optional<LosMatrix>& los_override() const { return los_override_; }

    /// Copies with a different IRS size or BS array size. The element grid is
    /// re-factored as M1 x M2 with M1 the largest divisor of M not above sqrt(M).
    Scene with_elements(int elements) const;
    Scene with_antennas(int antennas) const;

private:
    std::size_t index(NodeId i, NodeId j) const { return static_cast<std::size_t>(i) * nodes_.size() + static_cast<std::size_t>(j); }

    SceneParams params_;
    std::vector<Node> nodes_;
    std::optional<LosMatrix> los_override_;
    int irs_count_ = 0;
    int user_count_ = 0;
    std::vector<double> distances_;
    std::vector<char> los_;
};

/// Parses the JSON scene document ({"params", "nodes", "los_override"}).
Scene load_scene(std::string_view text);
Scene load_scene_file(const std::filesystem::path& path);
/// Serializes a scene back into the document format. Angles are never written.
std::string dump_scene(const Scene& scene);

/// Spherical angles of a direction vector; throws std::invalid_argument on a zero vector.
Direction direction_angles(const Vec3& delta);

}  // namespace irsroute
