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
// LoS channel models for ring arrays carrying spatial (vortex) modes.
//
// Element level: h = beta * exp(-j*k0*d_e) / (2*k0*d_e) with the exact
// Euclidean distance d_e.
//
// Mode level, two routes:
//   DISCRETE - the exact modulate -> propagate -> DFT-demodulate composition,
//              entry (m,n) = (1/V) sum_v sum_k h_{mv,nk} (1/sqrt(K)) e^{j*phi*l}
//              e^{-j*theta*l}. Oracle route, exact distances everywhere.
//   ANALYTIC - closed Bessel form from the paraxial distance expansion:
//              (beta*sqrt(K)/(2*k0*d)) * j^l * e^{-j*k0*sqrt(d^2+Rm^2+Rn^2)}
//              * J_l(k0*Rm*Rn/sqrt(d^2+Rm^2+Rn^2)),
//              the amplitude denominator replaced by d. The j^l sign fixes the
//              phase so ANALYTIC matches DISCRETE (not just in magnitude).
//
// The per-element receiver phase e^{j*theta_v*l} cancels against the
// demodulation phase and is deliberately absent from the effective gains.

#ifndef OAMTOPO_CHANNEL_HPP
#define OAMTOPO_CHANNEL_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "oamtopo/common.hpp"
#include "oamtopo/geometry.hpp"
#include "oamtopo/numerics.hpp"

namespace oamtopo {

struct LinkConfig {
    double distance_m = 100.0;
    double frequency_hz = 5.8e9;
    double beta = 4.0 * kPi;          // path-loss constant
    double noise_power_w = 10e-3;     // per receive element
    double power_budget_w = 1.0;
    double bandwidth_hz = 10e6;
    double min_spacing_m = 0.0;       // 0 -> lambda/2
    double aperture_m = 2.0;          // R_E
    int rf_chain_budget = 64;         // stored; N_f <= element budget

    double wavelength() const { return kSpeedOfLight / frequency_hz; }
    double wavenumber() const { return kTwoPi / wavelength(); }
    double min_spacing() const { return min_spacing_m > 0.0 ? min_spacing_m : 0.5 * wavelength(); }
    double snr_db() const { return 10.0 * std::log10(power_budget_w / noise_power_w); }

    LinkConfig with_snr_db(double snr_db) const {
        LinkConfig c = *this;
        c.noise_power_w = power_budget_w / std::pow(10.0, snr_db / 10.0);
        return c;
    }
};

enum class ChannelMethod { kAnalytic, kDiscrete };

struct ModeChannelMatrix {
    int mode = 0;
    ComplexMatrix h; // receive groups x transmit groups
};

/// Modes carried by a K-element ring: {1-K/2, ..., K/2}.
inline std::vector<int> mode_set_for(int k) {
    std::vector<int> m;
    for (int l = 1 - k / 2; l <= k / 2; ++l) m.push_back(l);
    return m;
}

/// Exact element-to-element channel coefficient.
inline cplx exact_element_channel(const Vec3& tx_pos, const Vec3& rx_pos, const LinkConfig& cfg) {
    const double de = distance(tx_pos, rx_pos);
    if (!(de > 0.0)) throw std::domain_error("exact_element_channel: coincident elements");
    const double k0 = cfg.wavenumber();
    return cfg.beta / (2.0 * k0 * de) * std::exp(cplx{0.0, -k0 * de});
}

/// Paraxial ring-to-ring distance: sqrt(d^2+Rr^2+Rt^2) - Rr*Rt*cos(theta-phi)/sqrt(...).
inline double approx_ring_distance(double r_rx, double r_tx, double theta, double phi, double d) {
    if (!(d > 0.0)) throw std::domain_error("approx_ring_distance: distance must be positive");
    const double s = std::sqrt(d * d + r_rx * r_rx + r_tx * r_tx);
    return s - r_rx * r_tx * std::cos(theta - phi) / s;
}

/// Full receive-element x transmit-element matrix, ring-major ordering on both sides.
inline ComplexMatrix full_element_matrix(const ArrayTopology& tx, const ArrayTopology& rx,
                                         const LinkConfig& cfg) {
    const auto& tp = tx.positions();
    const auto& rp = rx.positions();
    ComplexMatrix h(rp.size(), tp.size());
    for (std::size_t v = 0; v < rp.size(); ++v)
        for (std::size_t k = 0; k < tp.size(); ++k) h(v, k) = exact_element_channel(tp[k], rp[v], cfg);
    return h;
}

namespace detail {

inline cplx analytic_gain(double r_rx, double r_tx, int l, int k_elements, const LinkConfig& cfg) {
    const double d = cfg.distance_m;
    const double k0 = cfg.wavenumber();
    const double s = std::sqrt(d * d + r_rx * r_rx + r_tx * r_tx);
    const double arg = k0 * r_rx * r_tx / s;
    const double jl = bessel_j(l, arg);
    return cfg.beta * std::sqrt(static_cast<double>(k_elements)) / (2.0 * k0 * d) * unit_power(l) *
           std::exp(cplx{0.0, -k0 * s}) * jl;
}

inline void require_transceiver_pair(const ArrayTopology& tx, const ArrayTopology& rx) {
    if (!tx.transmission_capable() || !rx.transmission_capable())
        throw std::invalid_argument("channel: topology family carries no transmission scheme");
    if (tx.family() != rx.family() || tx.group_count() != rx.group_count() ||
        tx.elements_per_group() != rx.elements_per_group())
        throw std::invalid_argument("channel: transmit and receive ring structures must match");
}

} // namespace detail

/// Closed-form effective gain between CUCA rings m (receive) and n (transmit) for mode l.
inline cplx mode_gain_cuca(std::size_t m, std::size_t n, int l, const ArrayTopology& tx,
                           const ArrayTopology& rx, const LinkConfig& cfg) {
    if (tx.family() == Family::kFuca || rx.family() == Family::kFuca)
        throw std::invalid_argument("mode_gain_cuca: CUCA/UCA families only");
    const RingSpec& rm = rx.rings().at(m);
    const RingSpec& rn = tx.rings().at(n);
    return detail::analytic_gain(rm.radius_m, rn.radius_m, l, rn.element_count, cfg);
}

/// Closed-form per-receive-element gain between FUCA sub-rings, using the
/// virtual projection radius. The residual phase e^{j(theta_pv - theta_mv)l}
/// survives demodulation for non-coaxial pairs and is included here; it is 1
/// for coaxial pairs.
inline cplx mode_gain_fuca(std::size_t m, std::size_t n, std::size_t v, int l,
                           const ArrayTopology& tx, const ArrayTopology& rx,
                           const LinkConfig& cfg) {
    if (tx.family() != Family::kFuca || rx.family() != Family::kFuca)
        throw std::invalid_argument("mode_gain_fuca: FUCA family only");
    const FucaSpec& ft = *tx.fuca();
    const FucaSpec& fr = *rx.fuca();
    const ProjectionGeometry g = fuca_projection(ft, fr, static_cast<int>(n), static_cast<int>(m),
                                                 static_cast<int>(v));
    const double theta_v = kTwoPi * static_cast<double>(v) / fr.elements_per_subarray +
                           fr.subarray_rotation_rad;
    const cplx base = detail::analytic_gain(g.virtual_radius_m, ft.secondary_radius_m, l,
                                            ft.elements_per_subarray, cfg);
    return base * std::exp(cplx{0.0, (g.virtual_azimuth_rad - theta_v) * l});
}

/// Ring-to-ring effective channel matrix for one mode.
inline ModeChannelMatrix mode_channel_matrix(const ArrayTopology& tx, const ArrayTopology& rx,
                                             int l, const LinkConfig& cfg, ChannelMethod method) {
    detail::require_transceiver_pair(tx, rx);
    const std::size_t groups = tx.group_count();
    const int k = tx.elements_per_group();
    ModeChannelMatrix out{l, ComplexMatrix(groups, groups)};
    if (method == ChannelMethod::kAnalytic) {
        for (std::size_t m = 0; m < groups; ++m)
            for (std::size_t n = 0; n < groups; ++n) {
                if (tx.family() == Family::kFuca) {
                    cplx acc{};
                    for (int v = 0; v < k; ++v)
                        acc += mode_gain_fuca(m, n, static_cast<std::size_t>(v), l, tx, rx, cfg);
                    out.h(m, n) = acc / static_cast<double>(k);
                } else {
                    out.h(m, n) = mode_gain_cuca(m, n, l, tx, rx, cfg);
                }
            }
        return out;
    }
    const ComplexMatrix he = full_element_matrix(tx, rx, cfg);
    const auto& taz = tx.azimuths();
    const auto& raz = rx.azimuths();
    const double v_count = static_cast<double>(rx.elements_per_group());
    const double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(k));
    for (std::size_t v = 0; v < rx.element_count(); ++v) {
        const std::size_t m = static_cast<std::size_t>(rx.group_of(v));
        const cplx dem = std::exp(cplx{0.0, -raz[v] * l}) / v_count;
        for (std::size_t kk = 0; kk < tx.element_count(); ++kk) {
            const std::size_t n = static_cast<std::size_t>(tx.group_of(kk));
            out.h(m, n) += dem * he(v, kk) * inv_sqrt_k * std::exp(cplx{0.0, taz[kk] * l});
        }
    }
    return out;
}

// Cross-mode leakage through the discrete modulate/demodulate chain:
// entry(l_target, l_source, m, n). The diagonal l_target == l_source equals
// the DISCRETE mode matrix.
struct LeakageTensor {
    std::vector<int> modes;
    std::size_t groups = 0;
    std::vector<cplx> data;

    const cplx& at(std::size_t it, std::size_t is, std::size_t m, std::size_t n) const {
        return data[((it * modes.size() + is) * groups + m) * groups + n];
    }
    cplx& at(std::size_t it, std::size_t is, std::size_t m, std::size_t n) {
        return data[((it * modes.size() + is) * groups + m) * groups + n];
    }
};

inline LeakageTensor mode_coupling(const ArrayTopology& tx, const ArrayTopology& rx,
                                   const LinkConfig& cfg, const std::vector<int>& mode_set) {
    detail::require_transceiver_pair(tx, rx);
    LeakageTensor t;
    t.modes = mode_set;
    t.groups = tx.group_count();
    t.data.assign(mode_set.size() * mode_set.size() * t.groups * t.groups, cplx{});
    if (mode_set.empty()) return t;
    const ComplexMatrix he = full_element_matrix(tx, rx, cfg);
    const auto& taz = tx.azimuths();
    const auto& raz = rx.azimuths();
    const int k = tx.elements_per_group();
    const double v_count = static_cast<double>(rx.elements_per_group());
    const double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(k));
    for (std::size_t it = 0; it < mode_set.size(); ++it)
        for (std::size_t is = 0; is < mode_set.size(); ++is) {
            const int lt = mode_set[it], ls = mode_set[is];
            for (std::size_t v = 0; v < rx.element_count(); ++v) {
                const std::size_t m = static_cast<std::size_t>(rx.group_of(v));
                const cplx dem = std::exp(cplx{0.0, -raz[v] * lt}) / v_count;
                for (std::size_t kk = 0; kk < tx.element_count(); ++kk) {
                    const std::size_t n = static_cast<std::size_t>(tx.group_of(kk));
                    t.at(it, is, m, n) += dem * he(v, kk) * inv_sqrt_k *
                                          std::exp(cplx{0.0, taz[kk] * ls});
                }
            }
        }
    return t;
}

} // namespace oamtopo

#endif // OAMTOPO_CHANNEL_HPP
