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
// Topology switching cost: the minimum total element displacement between two
// equal-count layouts over all index assignments (exact Hungarian solve,
// shortest-augmenting-path form, O(n^3)).

#ifndef OAMTOPO_RECONFIG_HPP
#define OAMTOPO_RECONFIG_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "oamtopo/common.hpp"
#include "oamtopo/geometry.hpp"

namespace oamtopo {

struct AssignmentResult {
    double total_distance_m = 0.0;
    std::vector<int> permutation; // element i of A moves to slot permutation[i] of B
    std::uint64_t cost_matrix_checksum = 0;
};

namespace detail {

// Hungarian algorithm via successive shortest augmenting paths with dual
// potentials. cost is n x n row-major. Returns row -> column assignment.
inline std::vector<int> solve_assignment(const std::vector<double>& cost, int n, double* total) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<std::size_t>(n) + 1), v(static_cast<std::size_t>(n) + 1);
    std::vector<int> p(static_cast<std::size_t>(n) + 1), way(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n) + 1, inf);
        std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            const int i0 = p[static_cast<std::size_t>(j0)];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const double cur = cost[static_cast<std::size_t>(i0 - 1) * n + (j - 1)] -
                                   u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> row_to_col(static_cast<std::size_t>(n), -1);
    double sum = 0.0;
    for (int j = 1; j <= n; ++j) {
        if (p[static_cast<std::size_t>(j)] == 0) continue;
        row_to_col[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = j - 1;
        sum += cost[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1) * n + (j - 1)];
    }
    if (total) *total = sum;
    return row_to_col;
}

inline std::uint64_t fnv1a64(const void* data, std::size_t bytes) {
    const unsigned char* b = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < bytes; ++i) {
        h ^= b[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace detail

/// Minimum-total-displacement matching between two equal-count topologies.
inline AssignmentResult switching_cost(const ArrayTopology& a, const ArrayTopology& b) {
    if (a.element_count() != b.element_count())
        throw std::invalid_argument("switching_cost: element counts differ");
    const int n = static_cast<int>(a.element_count());
    std::vector<double> cost(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Vec3& pa = a.positions()[static_cast<std::size_t>(i)];
            const Vec3& pb = b.positions()[static_cast<std::size_t>(j)];
            cost[static_cast<std::size_t>(i) * n + j] = std::hypot(pa[0] - pb[0], pa[1] - pb[1]);
        }
    AssignmentResult res;
    res.permutation = detail::solve_assignment(cost, n, &res.total_distance_m);
    res.cost_matrix_checksum = detail::fnv1a64(cost.data(), cost.size() * sizeof(double));
    return res;
}

struct CostMatrix {
    std::vector<std::string> labels;
    std::vector<double> distance_m; // row-major, symmetric, zero diagonal

    double at(std::size_t i, std::size_t j) const { return distance_m[i * labels.size() + j]; }
};

/// Pairwise switching costs over a catalog of equal-count topologies.
inline CostMatrix cost_matrix(const std::vector<ArrayTopology>& catalog) {
    CostMatrix m;
    for (const ArrayTopology& t : catalog) m.labels.push_back(t.label());
    const std::size_t n = catalog.size();
    m.distance_m.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = switching_cost(catalog[i], catalog[j]).total_distance_m;
            m.distance_m[i * n + j] = d;
            m.distance_m[j * n + i] = d;
        }
    return m;
}

/// All named-family topologies feasible at exactly `budget` elements, shared
/// aperture, deterministic order: UCA, CUCA divisor structures, FUCA
/// structures (N >= 2), URA when the budget is square, RLA, spiral.
inline std::vector<ArrayTopology> catalog_for_budget(int budget, double aperture_m) {
    if (budget < 4 || budget > 64)
        throw std::invalid_argument("catalog_for_budget: budget must lie in [4, 64]");
    std::vector<ArrayTopology> out;
    if (budget % 2 == 0 && budget >= 4)
        out.push_back(build_uca(budget, aperture_m, 0.0, Region{aperture_m, 0.0}));
    for (int n = 2; n * 4 <= budget; ++n) {
        if (budget % n != 0) continue;
        const int k = budget / n;
        if (k < 4 || k % 2 != 0) continue;
        std::vector<RingSpec> rings;
        for (int i = 0; i < n; ++i) rings.push_back({aperture_m * (n - i) / n, k, 0.0});
        out.push_back(build_cuca(rings, Region{aperture_m, 0.0}));
    }
    for (int n = 2; n * 4 <= budget; ++n) {
        if (budget % n != 0) continue;
        const int k = budget / n;
        if (k < 4 || k % 2 != 0) continue;
        out.push_back(build_fuca(FucaSpec{n, k, 0.6 * aperture_m, 0.4 * aperture_m, 0.0},
                                 Region{aperture_m, 0.0}));
    }
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(budget))));
    if (side * side == budget) out.push_back(build_auxiliary(Family::kUra, budget, aperture_m));
    if (budget % 2 == 0) out.push_back(build_auxiliary(Family::kRla, budget, aperture_m));
    out.push_back(build_auxiliary(Family::kSpiral, budget, aperture_m));
    return out;
}

} // namespace oamtopo

#endif // OAMTOPO_RECONFIG_HPP
