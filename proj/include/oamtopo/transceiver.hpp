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
//
// End-to-end signal path: per-ring spatial-phase modulation, propagation
// through the exact element channel, per-ring DFT demodulation (normalized by
// 1/V, so the demodulated noise variance is sigma^2/V), and per-mode
// zero-forcing detection.

#ifndef OAMTOPO_TRANSCEIVER_HPP
#define OAMTOPO_TRANSCEIVER_HPP

#include <cmath>
#include <cstdint>
#include <cstddef>
#include <optional>
#include <vector>

#include "oamtopo/channel.hpp"
#include "oamtopo/common.hpp"
#include "oamtopo/geometry.hpp"
#include "oamtopo/numerics.hpp"

namespace oamtopo {

// ---------------------------------------------------------------------------
// Deterministic counter-based randomness: identical draws no matter how
// callers are scheduled, which keeps Monte Carlo sweeps reproducible.
// ---------------------------------------------------------------------------
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return splitmix64(seed ^ splitmix64(stream * 0xD1B54A32D192ED03ull + counter));
}

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    double uniform01() { // in (0, 1]
        const std::uint64_t bits = splitmix64(seed_ + 0x9E3779B97F4A7C15ull * ++n_);
        return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
    }

    // circularly symmetric complex gaussian, total variance `variance`
    cplx gaussian(double variance) {
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1)) * std::sqrt(variance / 2.0);
        return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
    }

    std::uint64_t bit() { return splitmix64(seed_ + 0x9E3779B97F4A7C15ull * ++n_) >> 63; }

private:
    std::uint64_t seed_;
    std::uint64_t n_ = 0;
};

// ---------------------------------------------------------------------------
// Constellations (Gray mapped, unit average symbol energy)
// ---------------------------------------------------------------------------
enum class Constellation { kQpsk, kQam16 };

inline int bits_per_symbol(Constellation c) { return c == Constellation::kQpsk ? 2 : 4; }

inline cplx map_symbol(Constellation c, const std::vector<int>& bits, std::size_t offset) {
    if (c == Constellation::kQpsk) {
        const double s = 1.0 / std::sqrt(2.0);
        return {bits[offset] ? -s : s, bits[offset + 1] ? -s : s};
    }
    // 16-QAM, Gray per axis: 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3 (scaled by 1/sqrt(10))
    auto axis = [](int b0, int b1) {
        const double lv[4] = {-3.0, -1.0, 1.0, 3.0};
        const int idx = b0 ? (b1 ? 2 : 3) : (b1 ? 1 : 0);
        return lv[idx] / std::sqrt(10.0);
    };
    return {axis(bits[offset], bits[offset + 1]), axis(bits[offset + 2], bits[offset + 3])};
}

inline void demap_symbol(Constellation c, cplx y, std::vector<int>& bits, std::size_t offset) {
    if (c == Constellation::kQpsk) {
        bits[offset] = y.real() < 0.0;
        bits[offset + 1] = y.imag() < 0.0;
        return;
    }
    auto axis = [](double v, int& b0, int& b1) {
        const double x = v * std::sqrt(10.0);
        if (x < -2.0) { b0 = 0; b1 = 0; }
        else if (x < 0.0) { b0 = 0; b1 = 1; }
        else if (x < 2.0) { b0 = 1; b1 = 1; }
        else { b0 = 1; b1 = 0; }
    };
    axis(y.real(), bits[offset], bits[offset + 1]);
    axis(y.imag(), bits[offset + 2], bits[offset + 3]);
}

// ---------------------------------------------------------------------------
// Frames and plans
// ---------------------------------------------------------------------------

// Data symbols indexed (ring, mode): rows follow the ring order, columns the
// plan's mode set.
struct SymbolFrame {
    std::size_t rings = 0;
    std::size_t modes = 0;
    std::vector<cplx> s;

    SymbolFrame() = default;
    SymbolFrame(std::size_t r, std::size_t m) : rings(r), modes(m), s(r * m) {}
    cplx& at(std::size_t ring, std::size_t mode) { return s[ring * modes + mode]; }
    const cplx& at(std::size_t ring, std::size_t mode) const { return s[ring * modes + mode]; }
};

struct TransceiverPlan {
    std::vector<int> mode_set;
    double sigma_t = 0.0;
    double sigma_r = 0.0;
    std::vector<double> allocation_w; // (ring, mode), row-major, watts
    Constellation constellation = Constellation::kQpsk;
    ChannelMethod detection_method = ChannelMethod::kDiscrete;
    double condition_bound = kDefaultConditionBound;

    double alloc(std::size_t ring, std::size_t mode) const {
        return allocation_w[ring * mode_set.size() + mode];
    }
    double total_power() const {
        double p = 0.0;
        for (double v : allocation_w) p += v;
        return p;
    }
};

/// Default plan: full mode set for the group size, power split equally across
/// (ring, mode) streams.
inline TransceiverPlan equal_power_plan(const ArrayTopology& t, const LinkConfig& cfg) {
    if (!t.transmission_capable())
        throw std::invalid_argument("equal_power_plan: topology carries no transmission scheme");
    TransceiverPlan p;
    p.mode_set = mode_set_for(t.elements_per_group());
    const std::size_t n = t.group_count() * p.mode_set.size();
    p.allocation_w.assign(n, cfg.power_budget_w / static_cast<double>(n));
    return p;
}

inline void validate_plan(const TransceiverPlan& plan, const ArrayTopology& t, const LinkConfig& cfg) {
    if (!t.transmission_capable())
        throw std::invalid_argument("plan: topology carries no transmission scheme");
    const int half = t.elements_per_group() / 2;
    for (int l : plan.mode_set)
        if (l < 1 - half || l > half)
            throw std::invalid_argument("plan: mode outside {1-K/2..K/2}");
    if (plan.allocation_w.size() != t.group_count() * plan.mode_set.size())
        throw std::invalid_argument("plan: allocation shape mismatch");
    if (plan.total_power() > cfg.power_budget_w + 1e-12)
        throw std::invalid_argument("plan: allocation exceeds the power budget");
}

// ---------------------------------------------------------------------------
// Modulation / demodulation
// ---------------------------------------------------------------------------

/// K x K spatial modulation matrix of ring n (1-based for the rotation term):
/// column for mode l carries e^{j*l*phi_k}, phi_k = 2*pi*(k-1)/K + n*sigma.
/// Satisfies W^H W = K I.
inline ComplexMatrix modulation_matrix(int k, int ring_index, double sigma_t) {
    if (k < 4 || k % 2 != 0) throw std::invalid_argument("modulation_matrix: K must be even, >= 4");
    const std::vector<int> modes = mode_set_for(k);
    ComplexMatrix w(k, k);
    for (int kk = 0; kk < k; ++kk) {
        const double phi = kTwoPi * kk / k + ring_index * sigma_t;
        for (std::size_t c = 0; c < modes.size(); ++c)
            w(kk, c) = std::exp(cplx{0.0, modes[c] * phi});
    }
    return w;
}

/// Element excitations x_{n,k} = sum_l (1/sqrt(K)) sqrt(p_{n,l}) s_{n,l} e^{j*l*phi_{n,k}},
/// ring-major order. Uses the topology's own element azimuths.
inline std::vector<cplx> modulate(const ArrayTopology& tx, const TransceiverPlan& plan,
                                  const SymbolFrame& frame) {
    if (frame.rings != tx.group_count() || frame.modes != plan.mode_set.size())
        throw std::invalid_argument("modulate: frame dimensions do not match the plan");
    const int k = tx.elements_per_group();
    const double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(k));
    std::vector<cplx> x(tx.element_count());
    for (std::size_t e = 0; e < tx.element_count(); ++e) {
        const std::size_t n = static_cast<std::size_t>(tx.group_of(e));
        const double phi = tx.azimuths()[e];
        cplx acc{};
        for (std::size_t c = 0; c < plan.mode_set.size(); ++c)
            acc += std::sqrt(plan.alloc(n, c)) * frame.at(n, c) *
                   std::exp(cplx{0.0, plan.mode_set[c] * phi});
        x[e] = acc * inv_sqrt_k;
    }
    return x;
}

/// r_{m,l} = (1/V) sum_v r_v e^{-j*(2*pi*(v-1)/V + m*sigma_r)*l}. The 1/V makes
/// the result independent of V and the demodulated noise variance sigma^2/V.
inline std::vector<cplx> demodulate(const std::vector<cplx>& samples, int v_count, int ring_index,
                                    double sigma_r, const std::vector<int>& mode_set) {
    if (v_count < 2 || v_count % 2 != 0) throw std::invalid_argument("demodulate: V must be even");
    for (int l : mode_set)
        if (std::abs(l) > v_count / 2) throw std::invalid_argument("demodulate: mode beyond +-V/2");
    std::vector<cplx> out(mode_set.size());
    for (std::size_t c = 0; c < mode_set.size(); ++c) {
        cplx acc{};
        for (int v = 0; v < v_count; ++v) {
            const double th = kTwoPi * v / v_count + ring_index * sigma_r;
            acc += samples[static_cast<std::size_t>(v)] * std::exp(cplx{0.0, -th * mode_set[c]});
        }
        out[c] = acc / static_cast<double>(v_count);
    }
    return out;
}

/// Per-mode zero-forcing detection: (H^H H)^{-1} H^H r.
inline std::vector<cplx> zf_detect(const ModeChannelMatrix& h_l, const std::vector<cplx>& r_l,
                                   double cond_bound = kDefaultConditionBound) {
    const ComplexMatrix a = gram(h_l.h);
    const HermitianFactor f = factor_hpd(a, cond_bound);
    const std::vector<cplx> rhs = h_l.h.adjoint().apply(r_l);
    return f.solve_refined(a, rhs);
}

// ---------------------------------------------------------------------------
// End-to-end chain
// ---------------------------------------------------------------------------

// Precomputed state for repeated frames over one link (Monte Carlo).
struct LinkContext {
    ComplexMatrix element_matrix;
    std::vector<ModeChannelMatrix> mode_matrices; // one per plan mode
    std::vector<HermitianFactor> factors;         // Gram factors; empty slot when singular
    std::vector<ComplexMatrix> grams;
    std::vector<bool> mode_usable;
};

inline LinkContext make_link_context(const ArrayTopology& tx, const ArrayTopology& rx,
                                     const LinkConfig& cfg, const TransceiverPlan& plan) {
    validate_plan(plan, tx, cfg);
    LinkContext ctx;
    ctx.element_matrix = full_element_matrix(tx, rx, cfg);
    for (int l : plan.mode_set) {
        ctx.mode_matrices.push_back(mode_channel_matrix(tx, rx, l, cfg, plan.detection_method));
        const ComplexMatrix a = gram(ctx.mode_matrices.back().h);
        ctx.grams.push_back(a);
        try {
            ctx.factors.push_back(factor_hpd(a, plan.condition_bound));
            ctx.mode_usable.push_back(true);
        } catch (const singular_matrix_error&) {
            ctx.factors.push_back(HermitianFactor{});
            ctx.mode_usable.push_back(false);
        }
    }
    return ctx;
}

/// modulate -> propagate (exact channel) -> per-element noise -> demodulate ->
/// per-mode ZF. Returns the frame estimate (power scaling removed). Streams of
/// modes whose Gram matrix fails the condition bound are returned as zero.
inline SymbolFrame end_to_end(const ArrayTopology& tx, const ArrayTopology& rx,
                              const LinkConfig& cfg, const TransceiverPlan& plan,
                              const SymbolFrame& frame, std::optional<std::uint64_t> noise_seed,
                              const LinkContext* ctx_opt = nullptr) {
    LinkContext local;
    const LinkContext* ctx = ctx_opt;
    if (!ctx) {
        local = make_link_context(tx, rx, cfg, plan);
        ctx = &local;
    }
    const std::vector<cplx> x = modulate(tx, plan, frame);
    std::vector<cplx> y = ctx->element_matrix.apply(x);
    if (noise_seed) {
        CounterRng rng(*noise_seed);
        for (cplx& v : y) v += rng.gaussian(cfg.noise_power_w);
    }
    const std::size_t groups = rx.group_count();
    const double v_count = static_cast<double>(rx.elements_per_group());
    // demodulate ring by ring against the actual element azimuths, so the
    // chain matches the DISCRETE mode matrices for any rotation
    ComplexMatrix r_ml(groups, plan.mode_set.size());
    for (std::size_t v = 0; v < rx.element_count(); ++v) {
        const std::size_t m = static_cast<std::size_t>(rx.group_of(v));
        for (std::size_t c = 0; c < plan.mode_set.size(); ++c)
            r_ml(m, c) += y[v] * std::exp(cplx{0.0, -rx.azimuths()[v] * plan.mode_set[c]}) / v_count;
    }
    SymbolFrame est(groups, plan.mode_set.size());
    std::vector<cplx> r_l(groups);
    for (std::size_t c = 0; c < plan.mode_set.size(); ++c) {
        if (!ctx->mode_usable[c]) continue; // streams stay zero
        for (std::size_t m = 0; m < groups; ++m) r_l[m] = r_ml(m, c);
        const std::vector<cplx> rhs = ctx->mode_matrices[c].h.adjoint().apply(r_l);
        const std::vector<cplx> s = ctx->factors[c].solve_refined(ctx->grams[c], rhs);
        for (std::size_t n = 0; n < groups; ++n) {
            const double p = plan.alloc(n, c);
            est.at(n, c) = p > 0.0 ? s[n] / std::sqrt(p) : cplx{};
        }
    }
    return est;
}

} // namespace oamtopo

#endif // OAMTOPO_TRANSCEIVER_HPP
