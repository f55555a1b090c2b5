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

#include <complex>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "irsroute/route.hpp"
#include "irsroute/scene.hpp"

namespace irsroute {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// BS uniform linear array response, entry n = exp(-j 2 pi (n-1) dA sin(aod) / lambda).
ComplexVector ula_response(int antennas, double spacing, double wavelength, double aod);

/// IRS uniform rectangular array response (URA parallel to the x-z plane).
/// Entry m uses row index floor((m-1)/M1) against sin(el) cos(az) and the
/// remainder against cos(el).
ComplexVector ura_response(int rows, int cols, double spacing, double wavelength, double azimuth, double elevation);

/// Unit-modulus steering vectors at both ends of a link. For a BS transmitter
/// `transmit` is the ULA response; for a user receiver `receive` is empty.
struct LinkResponses {
    ComplexVector transmit;
    ComplexVector receive;
};

LinkResponses link_responses(const Scene& scene, NodeId from, NodeId to);

/// Rank-1 LoS channel from `from` to `to`: M x N (BS->IRS), M x M (IRS->IRS) or
/// 1 x M (IRS->user, i.e. g^H). Throws std::invalid_argument without LoS or for
/// an unsupported node-kind pair.
ComplexMatrix link_channel(const Scene& scene, NodeId from, NodeId to);

/// Per-IRS reflection phases in [0, 2 pi).
struct PhaseConfig {
    std::map<NodeId, std::vector<double>> shifts;
};

/// Cascaded-channel factors for one route.
struct HopGains {
    std::vector<Complex> per_hop;  // A_n, n = 1..N_k
    double path_phase = 0.0;       // 2 pi D / lambda
    double total_distance = 0.0;   // D
};

/// Phases that co-phase every reflection, giving |A_n| = M on every hop.
PhaseConfig optimal_phase_shifts(const Scene& scene, const Route& route);

/// MRT toward the first-hop IRS with the global phase that makes the
/// end-to-end channel real and positive. Unit norm.
ComplexVector mrt_precoder(const Scene& scene, const Route& route);

HopGains hop_gains(const Scene& scene, const Route& route, const PhaseConfig& phases);

/// Direct evaluation of g^H Phi (prod S Phi) H w with the actual link matrices.
Complex end_to_end_channel(const Scene& scene, const Route& route, const PhaseConfig& phases,
                           const ComplexVector& precoder);

/// N M^{2 N_k} beta^{N_k+1} / prod d^2 -- the channel power under the optimal
/// phases and MRT.
double closed_form_power(const Scene& scene, const Route& route);

/// Normalized first-hop correlations |h_i^H h_j|^2 / (|h_i|^2 |h_j|^2) between the
/// BS ULA responses toward the given IRSs. Diagonal entries are exactly 1.
Eigen::MatrixXd favorable_propagation_metric(const Scene& scene, std::span<const NodeId> first_hop_irs);

/// Largest off-diagonal entry of favorable_propagation_metric (0 for fewer than two IRSs).
double max_first_hop_correlation(const Scene& scene, std::span<const NodeId> first_hop_irs);

/// Wraps an angle into [0, 2 pi).
double wrap_phase(double angle);

}  // namespace irsroute
