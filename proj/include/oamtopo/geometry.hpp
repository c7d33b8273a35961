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
// Array topology construction and validation. Families:
//   UCA    - single ring
//   CUCA   - concentric rings sharing one center
//   FUCA   - sub-rings whose centers sit uniformly on a primary circle
//   URA/RLA/SPIRAL/QFUCA_LAYOUT - auxiliary layouts for switching-cost
//            studies only; they carry no transmission scheme.
//
// Element ordering is ring-major (ring n, then element k), fixed so that
// channel and beamforming matrices index consistently.

#ifndef OAMTOPO_GEOMETRY_HPP
#define OAMTOPO_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oamtopo/common.hpp"

namespace oamtopo {

struct Region {
    double radius_m = 2.0;       // feasible disk radius
    double plane_offset_m = 0.0; // z of the array plane (0 transmit, d receive)
};

struct RingSpec {
    double radius_m = 0.0;
    int element_count = 0;
    double rotation_rad = 0.0; // direct azimuth offset of this ring
};

/// Ring specs for N concentric rings with a common K and the ring-indexed
/// rotation phi_{n,k} = 2*pi*(k-1)/K + n*sigma (n is 1-based).
inline std::vector<RingSpec> cuca_rings(const std::vector<double>& radii, int k, double sigma = 0.0) {
    std::vector<RingSpec> rings;
    for (std::size_t n = 0; n < radii.size(); ++n)
        rings.push_back({radii[n], k, static_cast<double>(n + 1) * sigma});
    return rings;
}

struct FucaSpec {
    int subarray_count = 0;        // N
    int elements_per_subarray = 0; // K
    double primary_radius_m = 0.0;   // distance origin -> sub-ring centers
    double secondary_radius_m = 0.0; // sub-ring radius
    double subarray_rotation_rad = 0.0;
};

enum class Family { kUca, kCuca, kFuca, kUra, kRla, kSpiral, kQfucaLayout };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::kUca: return "uca";
        case Family::kCuca: return "cuca";
        case Family::kFuca: return "fuca";
        case Family::kUra: return "ura";
        case Family::kRla: return "rla";
        case Family::kSpiral: return "spiral";
        case Family::kQfucaLayout: return "qfuca";
    }
    return "?";
}

struct Violation {
    std::string constraint; // short code, e.g. "distinct-radii"
    std::string detail;
    int index_a = -1;
    int index_b = -1;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Virtual projection geometry of one (tx sub-ring n, rx sub-ring m, rx element v)
// triple: the transmit sub-ring center is orthogonally projected onto the
// receive plane and the element is described in polar form around that point.
struct ProjectionGeometry {
    double virtual_radius_m = 0.0;  // R_pv
    double virtual_azimuth_rad = 0.0; // theta_pv
    double center_offset_m = 0.0;   // rho_mn, projected center -> sub-ring center m
    double offset_azimuth_rad = 0.0; // phi_mn
};

class ArrayTopology {
public:
    Family family() const { return family_; }
    const Region& region() const { return region_; }
    const std::vector<RingSpec>& rings() const { return rings_; }
    const std::optional<FucaSpec>& fuca() const { return fuca_; }

    // Ring structure as seen by the transceiver: number of groups and the
    // (common) element count per group.
    std::size_t group_count() const { return group_of_.empty() ? 0 : static_cast<std::size_t>(group_of_.back()) + 1; }
    int elements_per_group() const { return elements_per_group_; }
    bool transmission_capable() const {
        return (family_ == Family::kUca || family_ == Family::kCuca || family_ == Family::kFuca) &&
               elements_per_group_ > 0;
    }

    std::size_t element_count() const { return positions_.size(); }
    const std::vector<Vec3>& positions() const { return positions_; }
    // Local azimuth of each element within its group (ring-major order).
    const std::vector<double>& azimuths() const { return azimuths_; }
    int group_of(std::size_t element) const { return group_of_[element]; }

    std::string label() const { return label_; }

    ArrayTopology at_plane(double z) const {
        ArrayTopology t = *this;
        t.region_.plane_offset_m = z;
        for (Vec3& p : t.positions_) p[2] = z;
        return t;
    }

    // Builders below are the only constructors.
    friend ArrayTopology build_uca(int, double, double, const Region&);
    friend ArrayTopology build_cuca(const std::vector<RingSpec>&, const Region&);
    friend ArrayTopology build_fuca(const FucaSpec&, const Region&);
    friend ArrayTopology build_auxiliary(Family, int, double);

private:
    ArrayTopology() = default;

    void add_ring(int group, double cx, double cy, double radius, int count, double rotation,
                  double z) {
        for (int k = 0; k < count; ++k) {
            const double az = kTwoPi * k / count + rotation;
            positions_.push_back({cx + radius * std::cos(az), cy + radius * std::sin(az), z});
            azimuths_.push_back(az);
            group_of_.push_back(group);
        }
    }

    Family family_ = Family::kUca;
    Region region_;
    std::vector<RingSpec> rings_;
    std::optional<FucaSpec> fuca_;
    int elements_per_group_ = 0; // 0 when groups carry unequal counts
    std::vector<Vec3> positions_;
    std::vector<double> azimuths_;
    std::vector<int> group_of_;
    std::string label_;
};

inline std::vector<Vec3> element_positions(const ArrayTopology& t) { return t.positions(); }

// ---------------------------------------------------------------------------
// Validation (violations are data, never exceptions)
// ---------------------------------------------------------------------------

namespace detail {

inline void check_points(const std::vector<Vec3>& pos, double min_spacing_m, double max_radius_m,
                         ValidationReport& rep) {
    for (std::size_t i = 0; i < pos.size(); ++i) {
        const double r = std::hypot(pos[i][0], pos[i][1]);
        if (r > max_radius_m + 1e-12) {
            std::ostringstream os;
            os << "element at radius " << r << " m outside aperture " << max_radius_m << " m";
            rep.violations.push_back({"aperture", os.str(), static_cast<int>(i), -1});
        }
    }
    for (std::size_t i = 0; i < pos.size(); ++i)
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
            const double dd = distance(pos[i], pos[j]);
            if (dd < min_spacing_m - 1e-12) {
                std::ostringstream os;
                os << "element spacing " << dd << " m below minimum " << min_spacing_m << " m";
                rep.violations.push_back({"spacing", os.str(), static_cast<int>(i), static_cast<int>(j)});
            }
        }
}

inline void check_ring_specs(const std::vector<RingSpec>& rings, ValidationReport& rep) {
    for (std::size_t i = 0; i < rings.size(); ++i) {
        if (!(rings[i].radius_m > 0.0))
            rep.violations.push_back({"positive-radius", "ring radius must be positive",
                                      static_cast<int>(i), -1});
        for (std::size_t j = i + 1; j < rings.size(); ++j)
            if (rings[i].radius_m == rings[j].radius_m)
                rep.violations.push_back({"distinct-radii", "rings share a radius",
                                          static_cast<int>(i), static_cast<int>(j)});
    }
}

} // namespace detail

inline ValidationReport validate(const ArrayTopology& t, double min_spacing_m, double max_radius_m) {
    ValidationReport rep;
    if (t.family() == Family::kCuca || t.family() == Family::kUca)
        detail::check_ring_specs(t.rings(), rep);
    if (t.family() == Family::kFuca && t.fuca()) {
        const FucaSpec& f = *t.fuca();
        if (f.subarray_count > 1 && !(f.secondary_radius_m < f.primary_radius_m))
            rep.violations.push_back({"fuca-radial-order", "secondary radius must be below primary radius", -1, -1});
    }
    detail::check_points(t.positions(), min_spacing_m, max_radius_m, rep);
    return rep;
}

/// Validate a concentric ring parameter set without constructing a topology
/// (the builders refuse invalid parameters; this reports them instead).
inline ValidationReport validate_rings(const std::vector<RingSpec>& rings, double min_spacing_m,
                                       double max_radius_m) {
    ValidationReport rep;
    detail::check_ring_specs(rings, rep);
    std::vector<Vec3> pos;
    for (const RingSpec& ring : rings)
        for (int k = 0; k < ring.element_count; ++k) {
            const double az = kTwoPi * k / ring.element_count + ring.rotation_rad;
            pos.push_back({ring.radius_m * std::cos(az), ring.radius_m * std::sin(az), 0.0});
        }
    detail::check_points(pos, min_spacing_m, max_radius_m, rep);
    return rep;
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

namespace detail {

inline void require_valid(const ArrayTopology& t, double min_spacing_m) {
    const ValidationReport rep = validate(t, min_spacing_m, t.region().radius_m);
    if (!rep.ok())
        throw geometry_error(std::string(family_name(t.family())) + " topology invalid: " +
                             rep.violations.front().constraint + " (" + rep.violations.front().detail + ")");
}

} // namespace detail

inline ArrayTopology build_uca(int element_count, double radius_m, double rotation_rad = 0.0,
                               const Region& region = Region{}) {
    if (element_count < 4 || element_count % 2 != 0)
        throw geometry_error("build_uca: element count must be even and at least 4");
    if (!(radius_m > 0.0) || radius_m > region.radius_m)
        throw geometry_error("build_uca: radius must lie in (0, region radius]");
    ArrayTopology t;
    t.family_ = Family::kUca;
    t.region_ = region;
    t.rings_ = {RingSpec{radius_m, element_count, rotation_rad}};
    t.elements_per_group_ = element_count;
    t.add_ring(0, 0.0, 0.0, radius_m, element_count, rotation_rad, region.plane_offset_m);
    t.label_ = "uca-" + std::to_string(element_count);
    return t;
}

inline ArrayTopology build_cuca(const std::vector<RingSpec>& rings, const Region& region = Region{}) {
    if (rings.empty()) throw geometry_error("build_cuca: no rings");
    ArrayTopology t;
    t.family_ = rings.size() == 1 ? Family::kUca : Family::kCuca;
    t.region_ = region;
    t.rings_ = rings;
    const int k0 = rings.front().element_count;
    bool common_k = true;
    for (std::size_t n = 0; n < rings.size(); ++n) {
        const RingSpec& r = rings[n];
        if (r.element_count < 4 || r.element_count % 2 != 0)
            throw geometry_error("build_cuca: ring element count must be even and at least 4");
        if (!(r.radius_m > 0.0) || r.radius_m > region.radius_m)
            throw geometry_error("build_cuca: ring radius must lie in (0, region radius]");
        common_k = common_k && r.element_count == k0;
        t.add_ring(static_cast<int>(n), 0.0, 0.0, r.radius_m, r.element_count, r.rotation_rad,
                   region.plane_offset_m);
    }
    for (std::size_t i = 0; i < rings.size(); ++i)
        for (std::size_t j = i + 1; j < rings.size(); ++j)
            if (rings[i].radius_m == rings[j].radius_m)
                throw geometry_error("build_cuca: ring radii must be pairwise distinct");
    t.elements_per_group_ = common_k ? k0 : 0; // unequal counts stored, rejected by the transceiver
    t.label_ = rings.size() == 1 ? "uca-" + std::to_string(k0)
                                 : "cuca-" + std::to_string(rings.size()) + "x" + std::to_string(k0);
    return t;
}

inline ArrayTopology build_fuca(const FucaSpec& spec, const Region& region = Region{}) {
    if (spec.subarray_count < 1) throw geometry_error("build_fuca: need at least one sub-ring");
    if (spec.elements_per_subarray < 4 || spec.elements_per_subarray % 2 != 0)
        throw geometry_error("build_fuca: elements per sub-ring must be even and at least 4");
    if (spec.subarray_count > 1 && !(spec.secondary_radius_m < spec.primary_radius_m))
        throw geometry_error("build_fuca: secondary radius must be below the primary radius");
    if (spec.primary_radius_m + spec.secondary_radius_m > region.radius_m + 1e-12)
        throw geometry_error("build_fuca: primary + secondary radius exceeds the region radius");
    ArrayTopology t;
    t.family_ = Family::kFuca;
    t.region_ = region;
    t.fuca_ = spec;
    t.elements_per_group_ = spec.elements_per_subarray;
    for (int n = 0; n < spec.subarray_count; ++n) {
        const double phi_n = kTwoPi * n / spec.subarray_count;
        t.add_ring(n, spec.primary_radius_m * std::cos(phi_n),
                            spec.primary_radius_m * std::sin(phi_n), spec.secondary_radius_m,
                            spec.elements_per_subarray, spec.subarray_rotation_rad,
                            region.plane_offset_m);
    }
    t.label_ = "fuca-" + std::to_string(spec.subarray_count) + "x" +
               std::to_string(spec.elements_per_subarray);
    return t;
}

/// Layout-only families. URA: largest square grid inscribed in the aperture
/// disk. RLA: radial arms at uniform angles. SPIRAL: Archimedean spiral with
/// golden-angle steps. QFUCA_LAYOUT: sub-rings on a primary circle with each
/// local frame rotated by its center azimuth.
inline ArrayTopology build_auxiliary(Family family, int element_count, double aperture_radius_m) {
    if (element_count < 1 || !(aperture_radius_m > 0.0))
        throw geometry_error("build_auxiliary: bad parameters");
    ArrayTopology t;
    t.family_ = family;
    t.region_ = Region{aperture_radius_m, 0.0};
    switch (family) {
        case Family::kUra: {
            const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(element_count))));
            if (side * side != element_count)
                throw geometry_error("build_auxiliary: URA needs a perfect-square element count");
            const double half = aperture_radius_m / std::sqrt(2.0);
            for (int iy = 0; iy < side; ++iy)
                for (int ix = 0; ix < side; ++ix) {
                    const double x = side == 1 ? 0.0 : -half + 2.0 * half * ix / (side - 1);
                    const double y = side == 1 ? 0.0 : -half + 2.0 * half * iy / (side - 1);
                    t.positions_.push_back({x, y, 0.0});
                    t.azimuths_.push_back(std::atan2(y, x));
                    t.group_of_.push_back(0);
                }
            t.label_ = "ura-" + std::to_string(element_count);
            break;
        }
        case Family::kRla: {
            const int arms = element_count % 4 == 0 ? 4 : 2;
            if (element_count % arms != 0)
                throw geometry_error("build_auxiliary: RLA arm count must divide the element count");
            const int per_arm = element_count / arms;
            for (int a = 0; a < arms; ++a) {
                const double ang = kTwoPi * a / arms;
                for (int i = 1; i <= per_arm; ++i) {
                    const double r = aperture_radius_m * i / per_arm;
                    t.positions_.push_back({r * std::cos(ang), r * std::sin(ang), 0.0});
                    t.azimuths_.push_back(ang);
                    t.group_of_.push_back(a);
                }
            }
            t.label_ = "rla-" + std::to_string(element_count);
            break;
        }
        case Family::kSpiral: {
            const double golden = kPi * (3.0 - std::sqrt(5.0));
            for (int i = 0; i < element_count; ++i) {
                const double r = element_count == 1 ? 0.0
                                                    : aperture_radius_m * i / (element_count - 1);
                const double ang = golden * i;
                t.positions_.push_back({r * std::cos(ang), r * std::sin(ang), 0.0});
                t.azimuths_.push_back(ang);
                t.group_of_.push_back(0);
            }
            t.label_ = "spiral-" + std::to_string(element_count);
            break;
        }
        case Family::kQfucaLayout: {
            int n_sub = 4, k_sub = element_count / 4;
            if (element_count % 4 != 0 || k_sub < 2) { n_sub = 2; k_sub = element_count / 2; }
            if (element_count % n_sub != 0)
                throw geometry_error("build_auxiliary: QF-UCA layout needs an even element count");
            const double r2 = 0.6 * aperture_radius_m, r1 = 0.4 * aperture_radius_m;
            for (int n = 0; n < n_sub; ++n) {
                const double phi_n = kTwoPi * n / n_sub;
                // local frame rotated with the center azimuth
                t.add_ring(n, r2 * std::cos(phi_n), r2 * std::sin(phi_n), r1, k_sub,
                                    phi_n, 0.0);
            }
            t.label_ = "qfuca-" + std::to_string(n_sub) + "x" + std::to_string(k_sub);
            break;
        }
        default:
            throw geometry_error("build_auxiliary: not an auxiliary family");
    }
    return t;
}

// ---------------------------------------------------------------------------
// FUCA projection geometry (computed from Cartesian coordinates; the closed
// chord form 2*R2*sin(dPhi/2) is recovered exactly and checked in tests).
// ---------------------------------------------------------------------------
inline ProjectionGeometry fuca_projection(const FucaSpec& tx, const FucaSpec& rx, int tx_subarray,
                                          int rx_subarray, int rx_element) {
    if (tx_subarray < 0 || tx_subarray >= tx.subarray_count || rx_subarray < 0 ||
        rx_subarray >= rx.subarray_count || rx_element < 0 || rx_element >= rx.elements_per_subarray)
        throw geometry_error("fuca_projection: index out of range");
    const double phi_tx = kTwoPi * tx_subarray / tx.subarray_count;
    const double phi_rx = kTwoPi * rx_subarray / rx.subarray_count;
    // projected transmit center and receive center, both in the receive plane
    const double ox = rx.primary_radius_m * std::cos(phi_rx) - tx.primary_radius_m * std::cos(phi_tx);
    const double oy = rx.primary_radius_m * std::sin(phi_rx) - tx.primary_radius_m * std::sin(phi_tx);
    const double theta_v = kTwoPi * rx_element / rx.elements_per_subarray + rx.subarray_rotation_rad;
    const double vx = ox + rx.secondary_radius_m * std::cos(theta_v);
    const double vy = oy + rx.secondary_radius_m * std::sin(theta_v);
    ProjectionGeometry g;
    g.center_offset_m = std::hypot(ox, oy);
    if (g.center_offset_m == 0.0) { // coaxial pair: collapses to the sub-ring itself
        g.offset_azimuth_rad = 0.0;
        g.virtual_radius_m = rx.secondary_radius_m;
        g.virtual_azimuth_rad = theta_v;
        return g;
    }
    g.offset_azimuth_rad = std::atan2(oy, ox);
    g.virtual_radius_m = std::hypot(vx, vy);
    g.virtual_azimuth_rad = std::atan2(vy, vx);
    return g;
}

} // namespace oamtopo

#endif // OAMTOPO_GEOMETRY_HPP
