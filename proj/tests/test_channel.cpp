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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "irsroute/channel.hpp"
#include "irsroute/graph.hpp"
#include "support/test_support.hpp"

using namespace irsroute;
namespace t = irsroute::testing;

namespace {

constexpr double kPi = std::numbers::pi;

// BS -> IRS 1 -> IRS 2 -> user with every hop 5 m.
Scene five_metre_chain(int n = 20, int m1 = 20, int m2 = 20) {
    return Scene(t::radio_params(n, m1, m2), {{0, NodeKind::bs, {0, 0, 0}},
                                             {1, NodeKind::irs, {5, 0, 0}},
                                             {2, NodeKind::irs, {5, 5, 0}},
                                             {3, NodeKind::user, {10, 5, 0}}});
}

Route chain_route() { return Route{1, {1, 2}, {}, 0.0}; }

Complex direct_a(const Scene& s, const Route& r, std::size_t n, const std::vector<double>& theta) {
    const auto v = r.vertices(s);
    const auto in = link_responses(s, v[n], v[n + 1]).receive;
    const auto out = link_responses(s, v[n + 1], v[n + 2]).transmit;
    Complex a{0, 0};
    for (Eigen::Index m = 0; m < in.size(); ++m)
        a += std::conj(out(m)) * std::polar(1.0, theta[static_cast<std::size_t>(m)]) * in(m);
    return a;
}

}  // namespace

// --- array responses --------------------------------------------------------

TEST(Ula, BroadsideIsAllOnes) {
    const auto a = ula_response(8, 0.03, 0.06, 0.0);
    for (Eigen::Index n = 0; n < a.size(); ++n) EXPECT_EQ(a(n), Complex(1.0, 0.0));
}

TEST(Ula, SingleAntenna) {
    const auto a = ula_response(1, 0.03, 0.06, 1.234);
    ASSERT_EQ(a.size(), 1);
    EXPECT_EQ(a(0), Complex(1.0, 0.0));
}

TEST(Ula, EndfireHalfWavelengthAlternates) {
    const auto a = ula_response(4, 0.03, 0.06, kPi / 2);
    const double expected[] = {1, -1, 1, -1};
    for (int n = 0; n < 4; ++n) {
        EXPECT_NEAR(a(n).real(), expected[n], 1e-12);
        EXPECT_NEAR(a(n).imag(), 0.0, 1e-12);
    }
}

TEST(Ula, MatchesExponentOnRandomAngles) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    for (int t = 0; t < 100; ++t) {
        const double aod = ang(rng);
        const auto a = ula_response(16, 0.03, 0.06, aod);
        for (int n = 0; n < 16; ++n) EXPECT_LT(std::abs(a(n) - t::ula_entry(n, 0.03, 0.06, aod)), 1e-12);
    }
}

TEST(Ula, RejectsEmptyArray) { EXPECT_THROW(ula_response(0, 0.03, 0.06, 0.0), std::invalid_argument); }

TEST(Ura, BothTermsVanish) {
    const auto a = ura_response(4, 5, 0.03, 0.06, kPi / 2, kPi / 2);
    for (Eigen::Index m = 0; m < a.size(); ++m) EXPECT_LT(std::abs(a(m) - Complex(1.0, 0.0)), 1e-12);
}

TEST(Ura, SingleElement) {
    const auto a = ura_response(1, 1, 0.03, 0.06, 0.3, 0.7);
    ASSERT_EQ(a.size(), 1);
    EXPECT_EQ(a(0), Complex(1.0, 0.0));
}

TEST(Ura, TwoByTwoFloorLayout) {
    // az = 0, el = pi/2: the row term is pi per step, the column term vanishes,
    // so elements 1,2 share row 0 and elements 3,4 share row 1.
    const auto a = ura_response(2, 2, 0.03, 0.06, 0.0, kPi / 2);
    const double expected[] = {1, 1, -1, -1};
    for (int m = 0; m < 4; ++m) {
        EXPECT_NEAR(a(m).real(), expected[m], 1e-12);
        EXPECT_NEAR(a(m).imag(), 0.0, 1e-12);
    }
}

TEST(Ura, MatchesExponentOnRandomAngles) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> az(-kPi, kPi), el(0.0, kPi);
    for (int t = 0; t < 100; ++t) {
        const double a_az = az(rng), a_el = el(rng);
        const auto a = ura_response(4, 6, 0.03, 0.06, a_az, a_el);
        for (int m = 1; m <= 24; ++m)
            EXPECT_LT(std::abs(a(m - 1) - t::ura_entry(m, 4, 0.03, 0.06, a_az, a_el)), 1e-12);
    }
}

// --- link channels --------------------------------------------------------

TEST(LinkChannel, RankOneWithExpectedNorm) {
    const Scene s = five_metre_chain(8, 4, 4);
    const double beta = s.params().ref_path_gain;
    struct Case { NodeId from, to; double dims; };
    for (const Case c : {Case{0, 1, 8.0 * 16}, Case{1, 2, 16.0 * 16}, Case{2, 3, 16.0}}) {
        const ComplexMatrix h = link_channel(s, c.from, c.to);
        const double d = s.distance(c.from, c.to);
        EXPECT_NEAR(h.norm(), std::sqrt(beta * c.dims) / d, 1e-15);
        Eigen::JacobiSVD<ComplexMatrix> svd(h);
        const auto& sv = svd.singularValues();
        for (Eigen::Index i = 1; i < sv.size(); ++i) EXPECT_LT(sv(i), 1e-12 * sv(0));
    }
}

TEST(LinkChannel, FirstEntryIsScalarLinkGain) {
    const Scene s = five_metre_chain(2, 1, 2);
    const ComplexMatrix h = link_channel(s, 0, 1);
    const double beta = s.params().ref_path_gain;
    const Complex expected = std::sqrt(beta) / 5.0 * std::polar(1.0, -2 * kPi * 5.0 / 0.06);
    EXPECT_LT(std::abs(h(0, 0) - expected), 1e-15);
}

TEST(LinkChannel, MatchesPerEntryFormula) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    int checked = 0;
    while (checked < 20) {
        const Vec3 p{u(rng), u(rng), u(rng)};
        const double d = p.norm();
        if (d < 3.0 || d > 6.4) continue;
        const Scene s(t::radio_params(8, 4, 4), {{0, NodeKind::bs, {0, 0, 0}}, {1, NodeKind::irs, p}});
        const ComplexMatrix h = link_channel(s, 0, 1);
        const double beta = s.params().ref_path_gain;
        const Complex factor = std::sqrt(beta) / d * std::polar(1.0, -2 * kPi * d / 0.06);
        // Angles recomputed here: AoD against the x-axis ULA, arrival from -p.
        const double aod = std::asin(p.x / d);
        const double az = std::atan2(-p.y, -p.x);
        const double el = std::acos(-p.z / d);
        for (int m = 1; m <= 16; ++m)
            for (int n = 0; n < 8; ++n) {
                const Complex want = factor * t::ura_entry(m, 4, 0.03, 0.06, az, el) *
                                     std::conj(t::ula_entry(n, 0.03, 0.06, aod));
                EXPECT_LT(std::abs(h(m - 1, n) - want), 1e-12);
            }
        ++checked;
    }
}

TEST(LinkChannel, RejectsMissingLosAndBadPairs) {
    const Scene s = five_metre_chain();
    EXPECT_THROW(link_channel(s, 0, 2), std::invalid_argument);  // 7.07 m
    EXPECT_NO_THROW(link_channel(s, 2, 1));
    EXPECT_THROW(link_channel(s, 3, 2), std::invalid_argument);  // user -> IRS
    EXPECT_THROW(link_channel(s, 1, 0), std::invalid_argument);  // IRS -> BS
}

// --- phases, precoder, cascade --------------------------------------------

TEST(Phases, EveryHopReachesM) {
    const Scene s = five_metre_chain();
    const Route r = chain_route();
    const auto phases = optimal_phase_shifts(s, r);
    const auto gains = hop_gains(s, r, phases);
    ASSERT_EQ(gains.per_hop.size(), 2u);
    for (const Complex& a : gains.per_hop) EXPECT_NEAR(std::abs(a), 400.0, 400.0 * 1e-9);
    EXPECT_DOUBLE_EQ(gains.total_distance, 15.0);
}

TEST(Phases, SingleIrsUsesBothEnds) {
    const Scene s(t::radio_params(4, 3, 3), {{0, NodeKind::bs, {0, 0, 0}},
                                            {1, NodeKind::irs, {3, 3, 1}},
                                            {2, NodeKind::user, {6, 1, 2}}});
    const Route r{1, {1}, {}, 0.0};
    const auto phases = optimal_phase_shifts(s, r);
    const auto in = link_responses(s, 0, 1).receive;
    const auto out = link_responses(s, 1, 2).transmit;
    const auto& theta = phases.shifts.at(1);
    for (Eigen::Index m = 0; m < in.size(); ++m) {
        const double want = wrap_phase(std::arg(out(m)) - std::arg(in(m)));
        EXPECT_NEAR(theta[static_cast<std::size_t>(m)], want, 1e-12);
    }
}

TEST(Phases, FlippingOneElementLowersGain) {
    const Scene s = five_metre_chain(4, 4, 4);
    const Route r = chain_route();
    const auto phases = optimal_phase_shifts(s, r);
    for (std::size_t n = 0; n < 2; ++n) {
        const auto& theta = phases.shifts.at(r.irs[n]);
        const double best = std::abs(direct_a(s, r, n, theta));
        EXPECT_NEAR(best, 16.0, 1e-9);
        for (std::size_t m = 0; m < theta.size(); ++m) {
            auto flipped = theta;
            flipped[m] = wrap_phase(flipped[m] + kPi);
            EXPECT_LT(std::abs(direct_a(s, r, n, flipped)), best - 1.0);
        }
    }
}

TEST(Mrt, UnitNormAndFullArrayGain) {
    for (int n : {1, 4, 20}) {
        const Scene s = five_metre_chain(n);
        const Route r = chain_route();
        const auto w = mrt_precoder(s, r);
        EXPECT_NEAR(w.norm(), 1.0, 1e-12);
        const auto h1 = link_responses(s, 0, 1).transmit;
        EXPECT_NEAR(std::abs(h1.dot(w)), std::sqrt(static_cast<double>(n)), 1e-12);  // dot() conjugates h1
    }
}

TEST(Mrt, SingleAntennaIsPurePhase) {
    const Scene s = five_metre_chain(1);
    const auto w = mrt_precoder(s, chain_route());
    ASSERT_EQ(w.size(), 1);
    EXPECT_LT(std::abs(w(0) - std::polar(1.0, 2 * kPi * 15.0 / 0.06)), 1e-12);
}

TEST(EndToEnd, OptimalConfigMatchesClosedForm) {
    const Scene s = five_metre_chain();
    const Route r = chain_route();
    const Complex h = end_to_end_channel(s, r, optimal_phase_shifts(s, r), mrt_precoder(s, r));
    const double cf = closed_form_power(s, r);
    EXPECT_NEAR(std::norm(h) / cf, 1.0, 1e-9);
    // The global MRT phase cancels the propagation phase.
    EXPECT_LT(std::abs(h.imag()), 1e-9 * std::abs(h));
    EXPECT_GT(h.real(), 0.0);
}

TEST(EndToEnd, ZeroPhasesNeverBeatOptimum) {
    const Scene s = five_metre_chain(4, 4, 4);
    const Route r = chain_route();
    PhaseConfig zero;
    zero.shifts[1] = std::vector<double>(16, 0.0);
    zero.shifts[2] = std::vector<double>(16, 0.0);
    const Complex h = end_to_end_channel(s, r, zero, mrt_precoder(s, r));
    EXPECT_LE(std::norm(h), closed_form_power(s, r) * (1 + 1e-12));
}

TEST(EndToEnd, ScalarCaseIsProductOfLinkGains) {
    const Scene s(t::radio_params(1, 1, 1), {{0, NodeKind::bs, {0, 0, 0}},
                                            {1, NodeKind::irs, {4, 0, 0}},
                                            {2, NodeKind::user, {4, 5, 0}}});
    const Route r{1, {1}, {}, 0.0};
    const double beta = s.params().ref_path_gain;
    const double want = beta * beta / (16.0 * 25.0);
    const Complex h = end_to_end_channel(s, r, optimal_phase_shifts(s, r), mrt_precoder(s, r));
    EXPECT_NEAR(std::norm(h) / want, 1.0, 1e-12);
    EXPECT_NEAR(closed_form_power(s, r) / want, 1.0, 1e-14);
}

TEST(EndToEnd, RejectsBadInputs) {
    const Scene s = five_metre_chain(4, 2, 2);
    const Route r = chain_route();
    const auto phases = optimal_phase_shifts(s, r);
    EXPECT_THROW(end_to_end_channel(s, r, phases, ComplexVector::Ones(3)), std::invalid_argument);
    PhaseConfig missing;
    missing.shifts[1] = phases.shifts.at(1);
    EXPECT_THROW(end_to_end_channel(s, r, missing, mrt_precoder(s, r)), std::invalid_argument);
    PhaseConfig short_vec = phases;
    short_vec.shifts[2].pop_back();
    EXPECT_THROW(end_to_end_channel(s, r, short_vec, mrt_precoder(s, r)), std::invalid_argument);
    EXPECT_THROW(closed_form_power(s, Route{1, {2}, {}, 0.0}), std::invalid_argument);  // BS-IRS 2 is 7.07 m
    EXPECT_THROW(closed_form_power(s, Route{1, {1, 1}, {}, 0.0}), std::invalid_argument);
}

TEST(ClosedForm, TwoHopFiveMetreValue) {
    const Scene s = five_metre_chain();
    const Route r = chain_route();
    EXPECT_NEAR(closed_form_power(s, r) / 3.8823818958473007e-07, 1.0, 1e-12);
}

TEST(ClosedForm, DoublingMQuadruplesPerHop) {
    const Scene s = five_metre_chain();
    const Route r = chain_route();
    EXPECT_NEAR(closed_form_power(s.with_elements(800), r) / closed_form_power(s, r), 16.0, 1e-9);
}

// --- favorable propagation ------------------------------------------------

TEST(FavorablePropagation, DiagonalExactlyOne) {
    const Scene s = load_scene_file(IRSROUTE_DATA_DIR "/scenes/factory.json");
    std::vector<NodeId> first;
    for (NodeId j = 1; j <= s.irs_count(); ++j)
        if (s.los(0, j)) first.push_back(j);
    ASSERT_GE(first.size(), 4u);
    const auto rho = favorable_propagation_metric(s, first);
    for (Eigen::Index i = 0; i < rho.rows(); ++i) EXPECT_EQ(rho(i, i), 1.0);
    EXPECT_TRUE(rho.isApprox(rho.transpose()));
}

TEST(FavorablePropagation, SameAodIsFullyCorrelated) {
    const Scene s(t::radio_params(), {{0, NodeKind::bs, {0, 0, 0}},
                                     {1, NodeKind::irs, {3, 4, 0}},
                                     {2, NodeKind::irs, {3, 0, 4}}});
    const std::vector<NodeId> ids{1, 2};
    EXPECT_NEAR(favorable_propagation_metric(s, ids)(0, 1), 1.0, 1e-12);
    EXPECT_NEAR(max_first_hop_correlation(s, ids), 1.0, 1e-12);
}

TEST(FavorablePropagation, MatchesDirectCorrelation) {
    const Scene s = load_scene_file(IRSROUTE_DATA_DIR "/scenes/factory.json");
    const std::vector<NodeId> ids{1, 6, 11, 16};
    const auto rho = favorable_propagation_metric(s, ids);
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = 0; j < ids.size(); ++j) {
            const Vec3 a = s.node(ids[i]).position, b = s.node(ids[j]).position;
            const double sa = a.x / a.norm(), sb = b.x / b.norm();
            Complex acc{0, 0};
            for (int n = 0; n < 20; ++n)
                acc += std::conj(t::ula_entry(n, 0.03, 0.06, std::asin(sa))) * t::ula_entry(n, 0.03, 0.06, std::asin(sb));
            EXPECT_NEAR(rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), std::norm(acc) / 400.0, 1e-12);
        }
}

TEST(FavorablePropagation, RejectsNonFirstHop) {
    const Scene s = five_metre_chain();
    const std::vector<NodeId> ids{1, 2};
    EXPECT_THROW(favorable_propagation_metric(s, ids), std::invalid_argument);
    const std::vector<NodeId> user{3};
    EXPECT_THROW(favorable_propagation_metric(s, user), std::invalid_argument);
}

TEST(WrapPhase, LandsInRange) {
    for (double x : {-7.0, -2 * kPi, -1e-18, 0.0, 1.0, 2 * kPi, 100.0}) {
        const double w = wrap_phase(x);
        EXPECT_GE(w, 0.0);
        EXPECT_LT(w, 2 * kPi);
    }
}
