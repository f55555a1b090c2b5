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

#include "irsroute/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irsroute {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

Complex unit_phasor(double phase) { return {std::cos(phase), std::sin(phase)}; }

void require_route(const Scene& scene, const Route& route) {
    if (auto why = route_violation(scene, route); !why.empty())
        throw std::invalid_argument("route infeasible: " + why);
}

// Complex link factor sqrt(beta)/d * exp(-j 2 pi d / lambda).
Complex link_factor(const Scene& scene, double d) {
    const auto& p = scene.params();
    return std::sqrt(p.ref_path_gain) / d * unit_phasor(-two_pi * d / p.wavelength);
}

// Incoming response at IRS a_n and outgoing response toward a_{n+1}.
struct HopResponses {
    ComplexVector incoming;
    ComplexVector outgoing;
};

std::vector<HopResponses> route_responses(const Scene& scene, const Route& route) {
    const auto v = route.vertices(scene);
    std::vector<HopResponses> hops;
    hops.reserve(route.irs.size());
    for (std::size_t n = 1; n + 1 < v.size(); ++n) {
        hops.push_back({link_responses(scene, v[n - 1], v[n]).receive,
                        link_responses(scene, v[n], v[n + 1]).transmit});
    }
    return hops;
}

}  // namespace

double wrap_phase(double angle) {
    double r = std::fmod(angle, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

ComplexVector ula_response(int antennas, double spacing, double wavelength, double aod) {
    if (antennas < 1) throw std::invalid_argument("ULA needs at least one antenna");
    ComplexVector a(antennas);
    const double step = -two_pi * spacing * std::sin(aod) / wavelength;
    for (int n = 0; n < antennas; ++n) a(n) = unit_phasor(step * n);
    return a;
}

ComplexVector ura_response(int rows, int cols, double spacing, double wavelength, double azimuth, double elevation) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("URA needs at least one element per dimension");
    const int m_total = rows * cols;
    ComplexVector a(m_total);
    const double u = std::sin(elevation) * std::cos(azimuth);
    const double w = std::cos(elevation);
    for (int m = 0; m < m_total; ++m) {
        const int first = m / rows;
        const int second = m - first * rows;
        a(m) = unit_phasor(-two_pi * spacing * (first * u + second * w) / wavelength);
    }
    return a;
}

LinkResponses link_responses(const Scene& scene, NodeId from, NodeId to) {
    const auto& p = scene.params();
    const auto g = scene.link_geometry(from, to);
    auto ura = [&](const Direction& d) {
        return ura_response(p.irs_rows, p.irs_cols, p.element_spacing, p.wavelength, d.azimuth, d.elevation);
    };
    if (from == 0 && scene.is_irs(to))
        return {ula_response(p.bs_antennas, p.antenna_spacing, p.wavelength, g.bs_aod), ura(g.arrival)};
    if (scene.is_irs(from) && scene.is_irs(to)) return {ura(g.departure), ura(g.arrival)};
    if (scene.is_irs(from) && scene.is_user(to)) return {ura(g.departure), ComplexVector{}};
    throw std::invalid_argument("unsupported link " + std::string(to_string(scene.kind(from))) + " -> " +
                                std::string(to_string(scene.kind(to))));
}

ComplexMatrix link_channel(const Scene& scene, NodeId from, NodeId to) {
    if (!scene.los(from, to))
        throw std::invalid_argument("no LoS between nodes " + std::to_string(from) + " and " + std::to_string(to));
    const auto r = link_responses(scene, from, to);
    const Complex factor = link_factor(scene, scene.distance(from, to));
    if (r.receive.size() == 0) return factor * r.transmit.adjoint();
    return factor * r.receive * r.transmit.adjoint();
}

PhaseConfig optimal_phase_shifts(const Scene& scene, const Route& route) {
    require_route(scene, route);
    const auto hops = route_responses(scene, route);
    PhaseConfig cfg;
    for (std::size_t n = 0; n < hops.size(); ++n) {
        const auto& h = hops[n];
        std::vector<double> theta(static_cast<std::size_t>(h.incoming.size()));
        for (Eigen::Index m = 0; m < h.incoming.size(); ++m)
            theta[static_cast<std::size_t>(m)] = wrap_phase(std::arg(h.outgoing(m)) - std::arg(h.incoming(m)));
        cfg.shifts[route.irs[n]] = std::move(theta);
    }
    return cfg;
}

ComplexVector mrt_precoder(const Scene& scene, const Route& route) {
    require_route(scene, route);
    const auto h1 = link_responses(scene, 0, route.irs.front()).transmit;
    const double phase = two_pi * route_distance(scene, route.user, route.irs) / scene.params().wavelength;
    return unit_phasor(phase) * h1 / h1.norm();
}

HopGains hop_gains(const Scene& scene, const Route& route, const PhaseConfig& phases) {
    require_route(scene, route);
    const auto hops = route_responses(scene, route);
    HopGains out;
    out.total_distance = route_distance(scene, route.user, route.irs);
    out.path_phase = two_pi * out.total_distance / scene.params().wavelength;
    for (std::size_t n = 0; n < hops.size(); ++n) {
        auto it = phases.shifts.find(route.irs[n]);
        if (it == phases.shifts.end())
            throw std::invalid_argument("missing phase vector for IRS " + std::to_string(route.irs[n]));
        const auto& theta = it->second;
        const auto& h = hops[n];
        if (static_cast<Eigen::Index>(theta.size()) != h.incoming.size())
            throw std::invalid_argument("dimension mismatch in phase vector for IRS " + std::to_string(route.irs[n]));
        Complex a{0.0, 0.0};
        for (Eigen::Index m = 0; m < h.incoming.size(); ++m)
            a += std::conj(h.outgoing(m)) * unit_phasor(theta[static_cast<std::size_t>(m)]) * h.incoming(m);
        out.per_hop.push_back(a);
    }
    return out;
}

Complex end_to_end_channel(const Scene& scene, const Route& route, const PhaseConfig& phases,
                           const ComplexVector& precoder) {
    require_route(scene, route);
    if (precoder.size() != scene.params().bs_antennas)
        throw std::invalid_argument("dimension mismatch: precoder has " + std::to_string(precoder.size()) +
                                    " entries, BS has " + std::to_string(scene.params().bs_antennas) + " antennas");
    auto reflect = [&](NodeId irs, ComplexVector& signal) {
        auto it = phases.shifts.find(irs);
        if (it == phases.shifts.end())
            throw std::invalid_argument("missing phase vector for IRS " + std::to_string(irs));
        if (static_cast<Eigen::Index>(it->second.size()) != signal.size())
            throw std::invalid_argument("dimension mismatch in phase vector for IRS " + std::to_string(irs));
        for (Eigen::Index m = 0; m < signal.size(); ++m)
            signal(m) *= unit_phasor(it->second[static_cast<std::size_t>(m)]);
    };

    const auto& irs = route.irs;
    ComplexVector signal = link_channel(scene, 0, irs.front()) * precoder;
    for (std::size_t n = 0; n + 1 < irs.size(); ++n) {
        reflect(irs[n], signal);
        signal = link_channel(scene, irs[n], irs[n + 1]) * signal;
    }
    reflect(irs.back(), signal);
    const ComplexMatrix g = link_channel(scene, irs.back(), scene.user_node(route.user));
    return (g * signal)(0);
}

double closed_form_power(const Scene& scene, const Route& route) {
    require_route(scene, route);
    const auto& p = scene.params();
    const double m = p.irs_elements();
    const auto v = route.vertices(scene);
    double power = p.bs_antennas;
    for (std::size_t n = 0; n + 1 < v.size(); ++n) {
        const double d = scene.distance(v[n], v[n + 1]);
        power *= p.ref_path_gain / (d * d);
    }
    for (std::size_t n = 0; n < route.irs.size(); ++n) power *= m * m;
    return power;
}

Eigen::MatrixXd favorable_propagation_metric(const Scene& scene, std::span<const NodeId> first_hop_irs) {
    std::vector<ComplexVector> h;
    h.reserve(first_hop_irs.size());
    for (NodeId j : first_hop_irs) {
        if (!scene.is_irs(j)) throw std::invalid_argument("node " + std::to_string(j) + " is not an IRS");
        if (!scene.los(0, j)) throw std::invalid_argument("IRS " + std::to_string(j) + " has no LoS to the BS");
        h.push_back(link_responses(scene, 0, j).transmit);
    }
    auto inner = [](const ComplexVector& a, const ComplexVector& b) {
        Complex s{0.0, 0.0};
        for (Eigen::Index n = 0; n < a.size(); ++n) s += std::conj(a(n)) * b(n);
        return s;
    };
    const auto k = static_cast<Eigen::Index>(h.size());
    std::vector<double> self(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) self[i] = inner(h[i], h[i]).real();
    Eigen::MatrixXd rho(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(j);
            rho(i, j) = std::norm(inner(h[ui], h[uj])) / (self[ui] * self[uj]);
        }
    }
    return rho;
}

double max_first_hop_correlation(const Scene& scene, std::span<const NodeId> first_hop_irs) {
    const auto rho = favorable_propagation_metric(scene, first_hop_irs);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < rho.rows(); ++i)
        for (Eigen::Index j = 0; j < rho.cols(); ++j)
            if (i != j) worst = std::max(worst, rho(i, j));
    return worst;
}

}  // namespace irsroute
