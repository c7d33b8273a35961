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
// Spectral efficiency (per-stream ZF post-processing SNR), SNR / geometry
// sweeps, and Monte Carlo bit error rates.

#ifndef OAMTOPO_METRICS_HPP
#define OAMTOPO_METRICS_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "oamtopo/channel.hpp"
#include "oamtopo/common.hpp"
#include "oamtopo/geometry.hpp"
#include "oamtopo/numerics.hpp"
#include "oamtopo/transceiver.hpp"

namespace oamtopo {

struct NoiseModel {
    double element_noise_w = 0.0;    // sigma^2 per receive element
    double demodulated_noise_w = 0.0; // delta_l^2 = sigma^2 / V

    static NoiseModel from(const LinkConfig& cfg, int v_count) {
        return {cfg.noise_power_w, cfg.noise_power_w / static_cast<double>(v_count)};
    }
};

struct SweepResult {
    std::string topology;
    std::string axis_name;
    std::vector<double> axis;
    std::vector<double> values;
    std::uint64_t seed = 0;
};

/// SE of one mode: sum_n B*log2(1 + p_n / (delta^2 * [(H^H H)^{-1}]_{nn})).
/// Throws singular_matrix_error when H_l fails the condition bound.
inline double se_per_mode(const ModeChannelMatrix& h_l, const std::vector<double>& alloc_w,
                          double delta2_w, double bandwidth_hz,
                          double cond_bound = kDefaultConditionBound) {
    const std::vector<double> na = zf_noise_amplification_all(h_l.h, cond_bound);
    double se = 0.0;
    for (std::size_t n = 0; n < na.size(); ++n)
        se += bandwidth_hz * std::log2(1.0 + alloc_w[n] / (delta2_w * na[n]));
    return se;
}

struct TotalSe {
    double bits_per_s = 0.0;
    std::vector<int> singular_modes; // flagged, contributed zero
};

/// SE summed over the plan's mode set. Modes whose Gram matrix fails the
/// condition bound contribute zero and are flagged.
inline TotalSe total_se(const ArrayTopology& tx, const ArrayTopology& rx, const LinkConfig& cfg,
                        const TransceiverPlan& plan, ChannelMethod method) {
    validate_plan(plan, tx, cfg);
    const NoiseModel noise = NoiseModel::from(cfg, rx.elements_per_group());
    TotalSe out;
    std::vector<double> alloc(tx.group_count());
    for (std::size_t c = 0; c < plan.mode_set.size(); ++c) {
        const ModeChannelMatrix h = mode_channel_matrix(tx, rx, plan.mode_set[c], cfg, method);
        for (std::size_t n = 0; n < alloc.size(); ++n) alloc[n] = plan.alloc(n, c);
        try {
            out.bits_per_s += se_per_mode(h, alloc, noise.demodulated_noise_w, cfg.bandwidth_hz,
                                          plan.condition_bound);
        } catch (const singular_matrix_error&) {
            out.singular_modes.push_back(plan.mode_set[c]);
        }
    }
    return out;
}

/// SE vs transmit SNR (P_max / sigma^2, dB); the sweep rescales sigma^2.
inline std::vector<SweepResult> se_vs_snr(const std::vector<ArrayTopology>& topologies,
                                          const LinkConfig& cfg,
                                          const std::vector<double>& snr_grid_db,
                                          ChannelMethod method = ChannelMethod::kDiscrete) {
    std::vector<SweepResult> out;
    for (const ArrayTopology& t : topologies) {
        SweepResult r;
        r.topology = t.label();
        r.axis_name = "snr_db";
        r.axis = snr_grid_db;
        const ArrayTopology rx = t.at_plane(cfg.distance_m);
        for (double snr : snr_grid_db) {
            const LinkConfig c = cfg.with_snr_db(snr);
            r.values.push_back(total_se(t, rx, c, equal_power_plan(t, c), method).bits_per_s);
        }
        out.push_back(std::move(r));
    }
    return out;
}

// Scale a transmission-capable topology so its aperture becomes `aperture_m`
// (ring radii scale proportionally).
inline ArrayTopology scale_to_aperture(const ArrayTopology& t, double aperture_m) {
    const double f = aperture_m / t.region().radius_m;
    Region region{aperture_m, t.region().plane_offset_m};
    if (t.family() == Family::kFuca) {
        FucaSpec s = *t.fuca();
        s.primary_radius_m *= f;
        s.secondary_radius_m *= f;
        return build_fuca(s, region);
    }
    std::vector<RingSpec> rings = t.rings();
    for (RingSpec& r : rings) r.radius_m *= f;
    return build_cuca(rings, region);
}

/// SE over a (distance, aperture) grid; row-major rows follow the distance
/// grid. Values for one topology family whose radii scale with the aperture.
inline SweepResult se_surface(const ArrayTopology& base, const LinkConfig& cfg,
                              const std::vector<double>& distance_grid_m,
                              const std::vector<double>& radius_grid_m,
                              ChannelMethod method = ChannelMethod::kDiscrete) {
    SweepResult r;
    r.topology = base.label();
    r.axis_name = "d_m,r_m";
    for (double d : distance_grid_m)
        for (double re : radius_grid_m) {
            const ArrayTopology tx = scale_to_aperture(base, re);
            const ArrayTopology rx = tx.at_plane(d);
            LinkConfig c = cfg;
            c.distance_m = d;
            c.aperture_m = re;
            r.axis.push_back(d);
            r.axis.push_back(re);
            r.values.push_back(total_se(tx, rx, c, equal_power_plan(tx, c), method).bits_per_s);
        }
    return r;
}

/// Monte Carlo BER over a transmit-SNR grid. Bits are counted exactly over
/// Gray-mapped symbols on every (ring, mode) stream; streams of flagged
/// (numerically singular) modes decode as coin flips and still count.
/// Deterministic for a given seed: per-frame noise and data seeds are derived
/// from (seed, point index, frame index) counters.
inline SweepResult ber_monte_carlo(const ArrayTopology& tx, const ArrayTopology& rx,
                                   const LinkConfig& cfg, const TransceiverPlan& plan,
                                   const std::vector<double>& snr_grid_db,
                                   std::size_t frames_per_point, std::uint64_t seed) {
    if (frames_per_point < 1) throw std::invalid_argument("ber_monte_carlo: need at least one frame");
    SweepResult out;
    out.topology = tx.label();
    out.axis_name = "snr_db";
    out.axis = snr_grid_db;
    out.seed = seed;
    const std::size_t rings = tx.group_count();
    const std::size_t modes = plan.mode_set.size();
    const int bps = bits_per_symbol(plan.constellation);
    const std::size_t bits_per_frame = rings * modes * static_cast<std::size_t>(bps);
    for (std::size_t pt = 0; pt < snr_grid_db.size(); ++pt) {
        const LinkConfig c = cfg.with_snr_db(snr_grid_db[pt]);
        const LinkContext ctx = make_link_context(tx, rx, c, plan);
        std::uint64_t errors = 0, bits = 0;
        std::vector<int> tx_bits(bits_per_frame), rx_bits(bits_per_frame);
        for (std::size_t fr = 0; fr < frames_per_point; ++fr) {
            CounterRng data_rng(derive_seed(seed, 2 * pt, fr));
            for (int& b : tx_bits) b = static_cast<int>(data_rng.bit());
            SymbolFrame frame(rings, modes);
            std::size_t off = 0;
            for (std::size_t n = 0; n < rings; ++n)
                for (std::size_t m = 0; m < modes; ++m, off += bps)
                    frame.at(n, m) = map_symbol(plan.constellation, tx_bits, off);
            const SymbolFrame est = end_to_end(tx, rx, c, plan, frame,
                                               derive_seed(seed, 2 * pt + 1, fr), &ctx);
            off = 0;
            for (std::size_t n = 0; n < rings; ++n)
                for (std::size_t m = 0; m < modes; ++m, off += bps) {
                    if (ctx.mode_usable[m]) {
                        demap_symbol(plan.constellation, est.at(n, m), rx_bits, off);
                    } else {
                        // detector output carries no information; decide by coin flip
                        CounterRng flip(derive_seed(seed ^ 0xABCDEF1234567890ull,
                                                    pt * frames_per_point + fr, n * modes + m));
                        for (int b = 0; b < bps; ++b)
                            rx_bits[off + static_cast<std::size_t>(b)] = static_cast<int>(flip.bit());
                    }
                    for (int b = 0; b < bps; ++b)
                        errors += tx_bits[off + static_cast<std::size_t>(b)] !=
                                  rx_bits[off + static_cast<std::size_t>(b)];
                    bits += static_cast<std::uint64_t>(bps);
                }
        }
        out.values.push_back(static_cast<double>(errors) / static_cast<double>(bits));
    }
    return out;
}

} // namespace oamtopo

#endif // OAMTOPO_METRICS_HPP
