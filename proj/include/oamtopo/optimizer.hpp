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
// Alternating topology optimization: an outer loop over the CUCA and FUCA
// families, an inner candidate search over discrete ring structures (N, K),
// and per-candidate continuous radius refinement (grid / coordinate descent;
// the SE is oscillatory in the radii, so grids beat local gradients here).

#ifndef OAMTOPO_OPTIMIZER_HPP
#define OAMTOPO_OPTIMIZER_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oamtopo/geometry.hpp"
#include "oamtopo/metrics.hpp"

namespace oamtopo {

enum class TopologyFamily { kCuca, kFuca };

inline const char* topology_family_name(TopologyFamily f) {
    return f == TopologyFamily::kCuca ? "cuca" : "fuca";
}

struct TopologyParams {
    TopologyFamily family = TopologyFamily::kCuca;
    int ring_count = 1;        // N (sub-ring count for FUCA)
    int elements_per_ring = 4; // common K
    std::vector<double> radii; // CUCA: outermost-first ring radii; FUCA: {primary, secondary}
};

struct OptimizerConfig {
    int element_budget = 16;      // N_r
    double aperture_m = 2.0;      // R_N
    double epsilon_bits = 1e-3;   // convergence threshold on capacity (bit/s)
    double resolution_m = 0.02;   // radius grid step
    int max_iterations = 32;
    ChannelMethod method = ChannelMethod::kDiscrete;
};

struct IterationTrace {
    int iteration = 0;
    std::size_t candidate_count = 0;
    double capacity_bits = 0.0;
};

struct OptimizationResult {
    TopologyFamily family = TopologyFamily::kCuca;
    TopologyParams params;
    double capacity_bits = 0.0;
    std::vector<Vec3> tx_positions;
    std::vector<Vec3> rx_positions;
    std::vector<ComplexMatrix> beamforming; // W_n per ring
    std::vector<IterationTrace> trace;
    bool hit_iteration_cap = false;
};

namespace detail {

inline std::vector<double> uniform_reduction_radii(int n, double r_outer) {
    std::vector<double> radii;
    for (int i = 0; i < n; ++i) radii.push_back(r_outer * (n - i) / n);
    return radii;
}

inline std::optional<ArrayTopology> try_build(const TopologyParams& p, const LinkConfig& link,
                                              double aperture) {
    try {
        ArrayTopology t = [&] {
            if (p.family == TopologyFamily::kCuca) {
                std::vector<RingSpec> rings;
                for (double r : p.radii) rings.push_back({r, p.elements_per_ring, 0.0});
                return build_cuca(rings, Region{aperture, 0.0});
            }
            return build_fuca(FucaSpec{p.ring_count, p.elements_per_ring, p.radii.at(0),
                                       p.radii.at(1), 0.0},
                              Region{aperture, 0.0});
        }();
        if (!validate(t, link.min_spacing(), aperture).ok()) return std::nullopt;
        return t;
    } catch (const geometry_error&) {
        return std::nullopt;
    }
}

inline double evaluate(const TopologyParams& p, const OptimizerConfig& cfg, const LinkConfig& link) {
    const std::optional<ArrayTopology> t = try_build(p, link, cfg.aperture_m);
    if (!t) return -1.0;
    const ArrayTopology rx = t->at_plane(link.distance_m);
    return total_se(*t, rx, link, equal_power_plan(*t, link), cfg.method).bits_per_s;
}

// capacity desc, then fewer rings, larger K, lexicographically smaller radii
inline bool better(double ca, const TopologyParams& a, double cb, const TopologyParams& b) {
    if (ca != cb) return ca > cb;
    if (a.ring_count != b.ring_count) return a.ring_count < b.ring_count;
    if (a.elements_per_ring != b.elements_per_ring) return a.elements_per_ring > b.elements_per_ring;
    return a.radii < b.radii;
}

} // namespace detail

/// Candidate ring structures around `current`: every (N', K') with
/// |N' - N| <= 1, K' even >= 4, N'*K' <= budget; on the first iteration all
/// divisor pairs are seeded. Candidates carry feasible initial radii; anything
/// violating the geometric constraints is dropped (possibly yielding an empty set).
inline std::vector<TopologyParams> generate_candidates(TopologyFamily family,
                                                       const TopologyParams& current,
                                                       const OptimizerConfig& cfg,
                                                       const LinkConfig& link,
                                                       bool first_iteration) {
    std::vector<TopologyParams> out;
    const int n_min_family = family == TopologyFamily::kFuca ? 2 : 1;
    auto consider = [&](int n, int k) {
        if (n < n_min_family || k < 4 || k % 2 != 0) return;
        if (static_cast<long long>(n) * k > cfg.element_budget) return;
        TopologyParams p;
        p.family = family;
        p.ring_count = n;
        p.elements_per_ring = k;
        p.radii = family == TopologyFamily::kCuca
                      ? detail::uniform_reduction_radii(n, cfg.aperture_m)
                      : std::vector<double>{0.6 * cfg.aperture_m, 0.4 * cfg.aperture_m};
        if (!detail::try_build(p, link, cfg.aperture_m)) return;
        for (const TopologyParams& q : out)
            if (q.ring_count == n && q.elements_per_ring == k) return;
        out.push_back(std::move(p));
    };
    if (first_iteration) {
        for (int n = n_min_family; n * 4 <= cfg.element_budget; ++n)
            for (int k = 4; n * k <= cfg.element_budget; k += 2) consider(n, k);
    } else {
        for (int n = current.ring_count - 1; n <= current.ring_count + 1; ++n)
            for (int k = 4; k <= cfg.element_budget; k += 2) consider(n, k);
    }
    return out;
}

/// Refine the continuous radii of one candidate. CUCA: coordinate descent over
/// a resolution grid, outermost ring first, repeated until no single-coordinate
/// improvement. FUCA: 1-D grid over the aperture split with R1 + R2 = R_N.
/// Returns the refined params with their capacity, or nullopt when no feasible
/// radii exist.
inline std::optional<std::pair<TopologyParams, double>> optimize_radii(const TopologyParams& candidate,
                                                                       const OptimizerConfig& cfg,
                                                                       const LinkConfig& link) {
    TopologyParams best = candidate;
    double best_c = detail::evaluate(best, cfg, link);
    if (cfg.resolution_m >= cfg.aperture_m)
        return best_c >= 0.0 ? std::make_optional(std::make_pair(best, best_c)) : std::nullopt;

    if (candidate.family == TopologyFamily::kFuca) {
        for (double r1 = cfg.resolution_m; r1 < 0.5 * cfg.aperture_m; r1 += cfg.resolution_m) {
            TopologyParams p = candidate;
            p.radii = {cfg.aperture_m - r1, r1};
            const double c = detail::evaluate(p, cfg, link);
            if (c >= 0.0 && (best_c < 0.0 || detail::better(c, p, best_c, best))) {
                best = p;
                best_c = c;
            }
        }
        if (best_c < 0.0) return std::nullopt;
        return std::make_pair(best, best_c);
    }

    if (best_c < 0.0) { // find any feasible start by shrinking uniformly
        for (double f = 1.0; f > 0.05; f -= 0.05) {
            TopologyParams p = candidate;
            for (double& r : p.radii) r *= f;
            best_c = detail::evaluate(p, cfg, link);
            if (best_c >= 0.0) {
                best = p;
                break;
            }
        }
        if (best_c < 0.0) return std::nullopt;
    }
    bool improved = true;
    for (int pass = 0; pass < 16 && improved; ++pass) {
        improved = false;
        for (std::size_t ring = 0; ring < best.radii.size(); ++ring) { // outermost first
            for (double r = cfg.resolution_m; r <= cfg.aperture_m + 1e-12; r += cfg.resolution_m) {
                TopologyParams p = best;
                p.radii[ring] = r;
                bool distinct = true;
                for (std::size_t j = 0; j < p.radii.size(); ++j)
                    if (j != ring && p.radii[j] == r) distinct = false;
                if (!distinct) continue;
                const double c = detail::evaluate(p, cfg, link);
                if (c >= 0.0 && detail::better(c, p, best_c, best)) {
                    best = p;
                    best_c = c;
                    improved = true;
                }
            }
        }
    }
    return std::make_pair(best, best_c);
}

/// Full alternating optimization across both families.
inline OptimizationResult alternating_optimize(const OptimizerConfig& cfg, const LinkConfig& link) {
    if (!(cfg.epsilon_bits > 0.0) || !(cfg.resolution_m > 0.0))
        throw std::invalid_argument("alternating_optimize: epsilon and resolution must be positive");
    OptimizationResult result;
    result.capacity_bits = -1.0;
    for (TopologyFamily family : {TopologyFamily::kCuca, TopologyFamily::kFuca}) {
        // feasible deterministic seed
        TopologyParams current;
        current.family = family;
        if (family == TopologyFamily::kCuca) {
            int k = cfg.element_budget - cfg.element_budget % 2;
            current.ring_count = 1;
            current.elements_per_ring = std::max(4, k);
            current.radii = {cfg.aperture_m};
        } else {
            int k = cfg.element_budget / 2 - (cfg.element_budget / 2) % 2;
            if (k < 4) continue; // family infeasible at this budget
            current.ring_count = 2;
            current.elements_per_ring = k;
            current.radii = {0.6 * cfg.aperture_m, 0.4 * cfg.aperture_m};
        }
        double current_c = detail::evaluate(current, cfg, link);
        std::vector<IterationTrace> trace{{0, 1, std::max(current_c, 0.0)}};
        bool capped = true;
        std::map<std::pair<int, int>, std::pair<TopologyParams, double>> cache;
        for (int it = 1; it <= cfg.max_iterations; ++it) {
            const std::vector<TopologyParams> cands =
                generate_candidates(family, current, cfg, link, it == 1);
            if (cands.empty()) {
                capped = false;
                break;
            }
            TopologyParams next;
            double next_c = -1.0;
            for (const TopologyParams& cand : cands) {
                const auto key = std::make_pair(cand.ring_count, cand.elements_per_ring);
                auto found = cache.find(key);
                if (found == cache.end()) {
                    const auto refined = optimize_radii(cand, cfg, link);
                    if (!refined) continue;
                    found = cache.emplace(key, *refined).first;
                }
                if (next_c < 0.0 ||
                    detail::better(found->second.second, found->second.first, next_c, next)) {
                    next = found->second.first;
                    next_c = found->second.second;
                }
            }
            if (next_c < 0.0) {
                capped = false;
                break;
            }
            trace.push_back({it, cands.size(), std::max(next_c, current_c)});
            const double delta = std::abs(next_c - current_c);
            if (next_c > current_c) {
                current = next;
                current_c = next_c;
            }
            if (delta < cfg.epsilon_bits) {
                capped = false;
                break;
            }
        }
        if (current_c > result.capacity_bits) {
            result.family = family;
            result.params = current;
            result.capacity_bits = current_c;
            result.trace = trace;
            result.hit_iteration_cap = capped;
        }
    }
    const std::optional<ArrayTopology> t = detail::try_build(result.params, link, cfg.aperture_m);
    if (t) {
        result.tx_positions = t->positions();
        result.rx_positions = t->at_plane(link.distance_m).positions();
        for (std::size_t n = 0; n < t->group_count(); ++n)
            result.beamforming.push_back(
                modulation_matrix(t->elements_per_group(), static_cast<int>(n) + 1, 0.0));
    }
    return result;
}

} // namespace oamtopo

#endif // OAMTOPO_OPTIMIZER_HPP
