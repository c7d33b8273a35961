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

#ifndef OAMTOPO_COMMON_HPP
#define OAMTOPO_COMMON_HPP

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace oamtopo {

inline constexpr const char* kVersion = "0.1.0";

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kSpeedOfLight = 299792458.0; // m/s

inline constexpr cplx kJ{0.0, 1.0};

// j^l for integer l (exact, no trig round-off)
inline cplx unit_power(int l) {
    switch (((l % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a Gram matrix is rank deficient or its condition estimate
// exceeds the configured bound. Carries the estimate for diagnostics.
class singular_matrix_error : public std::runtime_error {
public:
    singular_matrix_error(const std::string& what, double condition_estimate)
        : std::runtime_error(what), cond_(condition_estimate) {}
    double condition() const { return cond_; }

private:
    double cond_;
};

class geometry_error : public std::invalid_argument {
public:
    explicit geometry_error(const std::string& what) : std::invalid_argument(what) {}
};

inline double sq(double x) { return x * x; }

inline double distance(const Vec3& a, const Vec3& b) {
    return std::sqrt(sq(a[0] - b[0]) + sq(a[1] - b[1]) + sq(a[2] - b[2]));
}

} // namespace oamtopo

#endif // OAMTOPO_COMMON_HPP
