// SPDX-License-Identifier: Apache-2.0
//
// oamtopo - reconfigurable antenna array topologies for OAM beam links
// Copyright (C) 2026 oamtopo contributors
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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oamtopo/transceiver.hpp"

using namespace oamtopo;

namespace {
const LinkConfig kCfg{};

SymbolFrame random_qpsk_frame(std::size_t rings, std::size_t modes, std::uint64_t seed) {
    CounterRng rng(seed);
    SymbolFrame f(rings, modes);
    const double s = 1.0 / std::sqrt(2.0);
    for (cplx& v : f.s) v = {rng.bit() ? -s : s, rng.bit() ? -s : s};
    return f;
}

} // namespace

TEST_CASE("modulation_matrix columns and orthogonality") {
    const ComplexMatrix w = modulation_matrix(4, 1, 0.0);
    // mode set for K=4 is {-1, 0, 1, 2}; the l=0 column is all ones
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(w(k, 1) - cplx{1.0, 0.0}) < 1e-15);

    const ComplexMatrix wh_w = w.adjoint() * w;
    ComplexMatrix four_i = ComplexMatrix::identity(4);
    for (std::size_t i = 0; i < 4; ++i) four_i(i, i) = 4.0;
    CHECK(max_abs_diff(wh_w, four_i) < 1e-12);

    // K=8, sigma=0.1, ring 2: entries e^{j l (2 pi (k-1)/8 + 0.2)} by direct evaluation
    const ComplexMatrix w8 = modulation_matrix(8, 2, 0.1);
    const std::vector<int> modes = mode_set_for(8);
    for (int k = 0; k < 8; ++k)
        for (std::size_t c = 0; c < modes.size(); ++c) {
            const double phi = kTwoPi * k / 8.0 + 2 * 0.1;
            const cplx expect{std::cos(modes[c] * phi), std::sin(modes[c] * phi)};
            CHECK(std::abs(w8(static_cast<std::size_t>(k), c) - expect) < 1e-12);
        }

    CHECK_THROWS_AS(modulation_matrix(7, 1, 0.0), std::invalid_argument);
}

TEST_CASE("modulation unitarity across rings and rotations") {
    for (int k : {4, 8, 16})
        for (int ring : {1, 2, 5})
            for (double sigma : {0.0, 0.3, 1.1}) {
                const ComplexMatrix w = modulation_matrix(k, ring, sigma);
                const ComplexMatrix g = w.adjoint() * w;
                ComplexMatrix ki = ComplexMatrix::identity(static_cast<std::size_t>(k));
                for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) ki(i, i) = k;
                CAPTURE(k, ring, sigma);
                CHECK(max_abs_diff(g, ki) < 1e-12 * k);
            }
}

TEST_CASE("modulate basics") {
    const ArrayTopology t = build_uca(4, 1.0);
    TransceiverPlan plan;
    plan.mode_set = {0};
    plan.allocation_w = {1.0};
    SymbolFrame one(1, 1);
    one.at(0, 0) = 1.0;
    const std::vector<cplx> x = modulate(t, plan, one);
    for (const cplx& v : x) CHECK(std::abs(v - cplx{0.5, 0.0}) < 1e-15);

    SymbolFrame zero(1, 1);
    for (const cplx& v : modulate(t, plan, zero)) CHECK(std::abs(v) == 0.0);

    SymbolFrame wrong(2, 1);
    CHECK_THROWS_AS(modulate(t, plan, wrong), std::invalid_argument);
}

TEST_CASE("per-ring transmit power equals the allocated power (Parseval)") {
    const ArrayTopology t = build_cuca({{2.0, 8, 0.0}, {1.0, 8, 0.0}});
    const TransceiverPlan plan = equal_power_plan(t, kCfg);
    const SymbolFrame f = random_qpsk_frame(2, plan.mode_set.size(), 7);
    const std::vector<cplx> x = modulate(t, plan, f);
    for (std::size_t ring = 0; ring < 2; ++ring) {
        double tx_power = 0.0;
        for (std::size_t e = ring * 8; e < (ring + 1) * 8; ++e) tx_power += std::norm(x[e]);
        double want = 0.0;
        for (std::size_t c = 0; c < plan.mode_set.size(); ++c)
            want += plan.alloc(ring, c) * std::norm(f.at(ring, c));
        CHECK(tx_power == Catch::Approx(want).epsilon(1e-12));
    }
    double total = 0.0;
    for (const cplx& v : x) total += std::norm(v);
    CHECK(total <= kCfg.power_budget_w + 1e-12);
}

TEST_CASE("demodulate extracts tones") {
    const std::vector<int> modes = mode_set_for(8);
    const std::vector<cplx> ones(8, cplx{1.0, 0.0});
    const std::vector<cplx> dc = demodulate(ones, 8, 1, 0.0, modes);
    for (std::size_t c = 0; c < modes.size(); ++c)
        CHECK(std::abs(dc[c] - (modes[c] == 0 ? cplx{1.0, 0.0} : cplx{})) < 1e-15);

    // a pure l=2 tone on ring m with rotation
    const int m = 3;
    const double sigma_r = 0.21;
    std::vector<cplx> tone(8);
    for (int v = 0; v < 8; ++v) {
        const double th = kTwoPi * v / 8.0 + m * sigma_r;
        tone[static_cast<std::size_t>(v)] = std::exp(cplx{0.0, 2.0 * th});
    }
    const std::vector<cplx> out = demodulate(tone, 8, m, sigma_r, modes);
    for (std::size_t c = 0; c < modes.size(); ++c)
        CHECK(std::abs(out[c] - (modes[c] == 2 ? cplx{1.0, 0.0} : cplx{})) < 1e-14);

    CHECK_THROWS_AS(demodulate(ones, 8, 1, 0.0, std::vector<int>{5}), std::invalid_argument);
}

TEST_CASE("demodulate(modulate(e_l)) over an identity channel scales by 1/sqrt(K)") {
    const ArrayTopology t = build_uca(8, 1.0);
    TransceiverPlan plan;
    plan.mode_set = mode_set_for(8);
    plan.allocation_w.assign(plan.mode_set.size(), 1.0 / plan.mode_set.size());
    for (std::size_t pick = 0; pick < plan.mode_set.size(); ++pick) {
        SymbolFrame f(1, plan.mode_set.size());
        f.at(0, pick) = 1.0;
        const std::vector<cplx> x = modulate(t, plan, f);
        const std::vector<cplx> r = demodulate(x, 8, 1, 0.0, plan.mode_set);
        for (std::size_t c = 0; c < plan.mode_set.size(); ++c) {
            const cplx want = c == pick ? std::sqrt(plan.alloc(0, pick)) / std::sqrt(8.0) : cplx{};
            CAPTURE(pick, c);
            CHECK(std::abs(r[c] - want) < 1e-12);
        }
    }
}

TEST_CASE("zf_detect basics") {
    ModeChannelMatrix h1{0, ComplexMatrix(1, 1)};
    h1.h(0, 0) = cplx{0.3, -0.4};
    const cplx s{0.7, 0.2};
    const std::vector<cplx> est = zf_detect(h1, {h1.h(0, 0) * s});
    CHECK(std::abs(est[0] - s) < 1e-12);

    ModeChannelMatrix hi{0, ComplexMatrix::identity(3)};
    const std::vector<cplx> noisy{{1.0, 0.1}, {-0.5, 0.2}, {0.0, -1.0}};
    const std::vector<cplx> passed = zf_detect(hi, noisy);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(passed[i] - noisy[i]) < 1e-12);

    ModeChannelMatrix sing{0, ComplexMatrix(2, 2)};
    sing.h(0, 0) = sing.h(0, 1) = sing.h(1, 0) = sing.h(1, 1) = 1.0;
    CHECK_THROWS_AS(zf_detect(sing, {cplx{1, 0}, cplx{1, 0}}), singular_matrix_error);
}

TEST_CASE("noiseless end-to-end recovery on a 4x4 concentric layout") {
    const ArrayTopology tx = build_cuca({{2.0, 4, 0.0}, {1.5, 4, 0.0}, {1.0, 4, 0.0}, {0.5, 4, 0.0}});
    const ArrayTopology rx = tx.at_plane(kCfg.distance_m);
    const TransceiverPlan plan = equal_power_plan(tx, kCfg);
    const SymbolFrame f = random_qpsk_frame(4, plan.mode_set.size(), 21);
    const SymbolFrame est = end_to_end(tx, rx, kCfg, plan, f, std::nullopt);
    for (std::size_t i = 0; i < f.s.size(); ++i) {
        CAPTURE(i);
        CHECK(std::abs(est.s[i] - f.s[i]) < 1e-8 * std::abs(f.s[i]));
    }
}

TEST_CASE("end_to_end determinism under a fixed seed") {
    const ArrayTopology tx = build_uca(8, 1.5);
    const ArrayTopology rx = tx.at_plane(kCfg.distance_m);
    const TransceiverPlan plan = equal_power_plan(tx, kCfg);
    const SymbolFrame f = random_qpsk_frame(1, plan.mode_set.size(), 3);
    const SymbolFrame a = end_to_end(tx, rx, kCfg, plan, f, 42u);
    const SymbolFrame b = end_to_end(tx, rx, kCfg, plan, f, 42u);
    for (std::size_t i = 0; i < a.s.size(); ++i) CHECK(a.s[i] == b.s[i]);
    const SymbolFrame c = end_to_end(tx, rx, kCfg, plan, f, 43u);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.s.size(); ++i) any_diff |= a.s[i] != c.s[i];
    CHECK(any_diff);
}

TEST_CASE("zero transmit power leaves only amplified noise after ZF") {
    const ArrayTopology tx = build_uca(8, 1.5);
    const ArrayTopology rx = tx.at_plane(kCfg.distance_m);
    TransceiverPlan plan = equal_power_plan(tx, kCfg);
    plan.allocation_w.assign(plan.allocation_w.size(), 0.0);
    const SymbolFrame f = random_qpsk_frame(1, plan.mode_set.size(), 5);
    for (const cplx& v : modulate(tx, plan, f)) CHECK(std::abs(v) == 0.0);
    // the demodulated signal is pure noise, and ZF passes it through amplified
    CounterRng rng(9);
    std::vector<cplx> noise(8);
    for (cplx& v : noise) v = rng.gaussian(kCfg.noise_power_w);
    const std::vector<cplx> r = demodulate(noise, 8, 1, 0.0, plan.mode_set);
    const ModeChannelMatrix h = mode_channel_matrix(tx, rx, 0, kCfg, ChannelMethod::kDiscrete);
    const std::vector<cplx> out = zf_detect(h, {r[plan.mode_set.size() / 2]});
    CHECK(std::abs(out[0]) > 0.0);
}

TEST_CASE("rotation consistency: matched transmit and receive rotations") {
    const double sigma = 0.23;
    const ArrayTopology tx0 = build_cuca(cuca_rings({2.0, 1.0}, 8, 0.0));
    const ArrayTopology tx1 = build_cuca(cuca_rings({2.0, 1.0}, 8, sigma));
    const TransceiverPlan plan = equal_power_plan(tx0, kCfg);
    const SymbolFrame f = random_qpsk_frame(2, plan.mode_set.size(), 11);
    const SymbolFrame a = end_to_end(tx0, tx0.at_plane(100.0), kCfg, plan, f, std::nullopt);
    const SymbolFrame b = end_to_end(tx1, tx1.at_plane(100.0), kCfg, plan, f, std::nullopt);
    for (std::size_t i = 0; i < a.s.size(); ++i)
        CHECK(std::abs(std::abs(a.s[i]) - std::abs(b.s[i])) < 1e-9);
}

TEST_CASE("plan validation") {
    const ArrayTopology t = build_uca(8, 1.0);
    TransceiverPlan plan = equal_power_plan(t, kCfg);
    CHECK_NOTHROW(validate_plan(plan, t, kCfg));
    plan.allocation_w[0] += kCfg.power_budget_w; // blows the budget
    CHECK_THROWS_AS(validate_plan(plan, t, kCfg), std::invalid_argument);

    TransceiverPlan bad = equal_power_plan(t, kCfg);
    bad.mode_set[0] = 5; // outside {1-K/2..K/2} for K=8
    CHECK_THROWS_AS(validate_plan(bad, t, kCfg), std::invalid_argument);
}

TEST_CASE("constellation mapping round-trips") {
    for (Constellation c : {Constellation::kQpsk, Constellation::kQam16}) {
        CounterRng rng(17);
        const int bps = bits_per_symbol(c);
        std::vector<int> bits(static_cast<std::size_t>(bps) * 64), back(bits.size());
        for (int& b : bits) b = static_cast<int>(rng.bit());
        for (std::size_t s = 0; s < 64; ++s) {
            const cplx y = map_symbol(c, bits, s * static_cast<std::size_t>(bps));
            demap_symbol(c, y, back, s * static_cast<std::size_t>(bps));
        }
        CHECK(bits == back);
    }
    // exact unit average energy over the full 16-qam alphabet
    std::vector<int> bits(4);
    double e = 0.0;
    for (int w = 0; w < 16; ++w) {
        bits = {w & 1, (w >> 1) & 1, (w >> 2) & 1, (w >> 3) & 1};
        e += std::norm(map_symbol(Constellation::kQam16, bits, 0));
    }
    CHECK(e / 16.0 == Catch::Approx(1.0));
}

TEST_CASE("counter rng is reproducible and roughly gaussian") {
    CounterRng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.uniform01() == b.uniform01());
    CounterRng g(7);
    double mean = 0.0, var = 0.0;
    const int n = 20000;
    std::vector<cplx> draws;
    for (int i = 0; i < n; ++i) draws.push_back(g.gaussian(2.0));
    for (const cplx& z : draws) mean += z.real() + z.imag();
    mean /= 2 * n;
    for (const cplx& z : draws) var += sq(z.real() - mean) + sq(z.imag() - mean);
    var /= 2 * n;
    CHECK(std::abs(mean) < 0.02);
    CHECK(var == Catch::Approx(1.0).margin(0.03)); // per-component variance: 2.0 / 2
}
