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
// Test-only helpers: seeded random matrices, exact unitary factors, and the
// independent oracles (they never call the code paths they check).

#ifndef OAMTOPO_TEST_UTIL_HPP
#define OAMTOPO_TEST_UTIL_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "oamtopo/common.hpp"
#include "oamtopo/numerics.hpp"
#include "oamtopo/transceiver.hpp"

namespace oamtopo::test {

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    CounterRng rng(seed);
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = {2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0};
    return m;
}

// Product of random Givens rotations and phases: unitary by construction.
inline ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
    CounterRng rng(seed);
    ComplexMatrix u = ComplexMatrix::identity(n);
    for (int sweep = 0; sweep < 3; ++sweep)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double th = kTwoPi * rng.uniform01();
                const double ph = kTwoPi * rng.uniform01();
                const cplx c{std::cos(th), 0.0};
                const cplx s = std::sin(th) * std::exp(cplx{0.0, ph});
                for (std::size_t col = 0; col < n; ++col) {
                    const cplx a = u(i, col), b = u(j, col);
                    u(i, col) = c * a + s * b;
                    u(j, col) = -std::conj(s) * a + c * b;
                }
            }
    return u;
}

// Exhaustive-permutation assignment minimum (n <= 9): the brute-force oracle.
inline double brute_force_assignment(const std::vector<oamtopo::Vec3>& a,
                                     const std::vector<oamtopo::Vec3>& b) {
    std::vector<int> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e300;
    do {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            s += std::hypot(a[i][0] - b[static_cast<std::size_t>(perm[i])][0],
                            a[i][1] - b[static_cast<std::size_t>(perm[i])][1]);
        best = std::min(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Independent assignment solver for larger instances: subset-DP over columns,
// O(n * 2^n). Shares no code with the Hungarian path.
inline double dp_assignment(const std::vector<oamtopo::Vec3>& a,
                            const std::vector<oamtopo::Vec3>& b) {
    const std::size_t n = a.size();
    std::vector<double> cost(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            cost[i * n + j] = std::hypot(a[i][0] - b[j][0], a[i][1] - b[j][1]);
    const std::size_t full = std::size_t{1} << n;
    std::vector<double> dp(full, 1e300);
    dp[0] = 0.0;
    for (std::size_t mask = 0; mask < full; ++mask) {
        if (dp[mask] >= 1e300) continue;
        const std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (row == n) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (mask & (std::size_t{1} << j)) continue;
            const std::size_t nm = mask | (std::size_t{1} << j);
            dp[nm] = std::min(dp[nm], dp[mask] + cost[row * n + j]);
        }
    }
    return dp[full - 1];
}

inline double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

} // namespace oamtopo::test

#endif // OAMTOPO_TEST_UTIL_HPP
