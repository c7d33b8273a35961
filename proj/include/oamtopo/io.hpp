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
// File formats. CSV uses '.' decimals, ',' separators, LF line endings and a
// '#'-prefixed header carrying the config hash, seed and tool version; writes
// go through a temp file plus rename so readers never see partial output.

#ifndef OAMTOPO_IO_HPP
#define OAMTOPO_IO_HPP

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oamtopo/channel.hpp"
#include "oamtopo/common.hpp"
#include "oamtopo/geometry.hpp"
#include "oamtopo/metrics.hpp"
#include "oamtopo/optimizer.hpp"
#include "oamtopo/reconfig.hpp"

namespace oamtopo {

using nlohmann::json;

/// Locale-independent shortest-faithful decimal with at most 12 significant digits.
inline std::string format_double(double v, int precision = 12) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, precision);
    return std::string(buf, res.ptr);
}

inline double round_sig(double v, int digits = 12) {
    const std::string s = format_double(v, digits);
    return std::strtod(s.c_str(), nullptr);
}

inline std::uint64_t fnv1a64_str(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hash_hex(const std::string& s) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64_str(s)));
    return buf;
}

inline void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string());
        os << content;
    }
    std::filesystem::rename(tmp, path);
}

struct RunMeta {
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string version = kVersion;

    std::string csv_header() const {
        return "# config_hash=" + config_hash + " seed=" + std::to_string(seed) +
               " version=" + version + "\n";
    }
    json as_json() const {
        return json{{"config_hash", config_hash}, {"seed", seed}, {"version", version}};
    }
};

// ---------------------------------------------------------------------------
// Topology export
// ---------------------------------------------------------------------------
inline json topology_json(const ArrayTopology& t, const LinkConfig& cfg) {
    json params;
    if (t.family() == Family::kFuca && t.fuca()) {
        const FucaSpec& f = *t.fuca();
        params = {{"subarrays", f.subarray_count},
                  {"elements_per_subarray", f.elements_per_subarray},
                  {"primary_radius_m", round_sig(f.primary_radius_m)},
                  {"secondary_radius_m", round_sig(f.secondary_radius_m)},
                  {"rotation_rad", round_sig(f.subarray_rotation_rad)}};
    } else if (!t.rings().empty()) {
        json rings = json::array();
        for (const RingSpec& r : t.rings())
            rings.push_back({{"radius_m", round_sig(r.radius_m)},
                             {"elements", r.element_count},
                             {"rotation_rad", round_sig(r.rotation_rad)}});
        params = {{"rings", rings}};
    } else {
        params = {{"elements", t.element_count()}};
    }
    json positions = json::array();
    for (const Vec3& p : t.positions())
        positions.push_back({round_sig(p[0]), round_sig(p[1]), round_sig(p[2])});
    const ValidationReport rep = validate(t, cfg.min_spacing(), t.region().radius_m);
    json violations = json::array();
    for (const Violation& v : rep.violations)
        violations.push_back({{"constraint", v.constraint},
                              {"detail", v.detail},
                              {"index_a", v.index_a},
                              {"index_b", v.index_b}});
    return json{{"family", family_name(t.family())},
                {"label", t.label()},
                {"parameters", params},
                {"positions", positions},
                {"validation", {{"ok", rep.ok()}, {"violations", violations}}}};
}

inline std::string topology_csv(const ArrayTopology& t, const RunMeta& meta) {
    std::string out = meta.csv_header();
    out += "ring,index,x_m,y_m,z_m\n";
    for (std::size_t i = 0; i < t.element_count(); ++i) {
        const Vec3& p = t.positions()[i];
        out += std::to_string(t.group_of(i)) + "," + std::to_string(i) + "," + format_double(p[0]) +
               "," + format_double(p[1]) + "," + format_double(p[2]) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Channel / frame dumps
// ---------------------------------------------------------------------------
inline std::string mode_matrix_csv(const std::vector<ModeChannelMatrix>& mats, ChannelMethod method,
                                   const RunMeta& meta) {
    std::string out = meta.csv_header();
    out += "mode,m,n,re,im,method\n";
    const char* name = method == ChannelMethod::kAnalytic ? "analytic" : "discrete";
    for (const ModeChannelMatrix& mm : mats)
        for (std::size_t m = 0; m < mm.h.rows(); ++m)
            for (std::size_t n = 0; n < mm.h.cols(); ++n)
                out += std::to_string(mm.mode) + "," + std::to_string(m) + "," + std::to_string(n) +
                       "," + format_double(mm.h(m, n).real()) + "," +
                       format_double(mm.h(m, n).imag()) + "," + name + "\n";
    return out;
}

inline std::string leakage_csv(const LeakageTensor& t, const RunMeta& meta) {
    std::string out = meta.csv_header();
    out += "l_target,l_source,m,n,abs\n";
    for (std::size_t it = 0; it < t.modes.size(); ++it)
        for (std::size_t is = 0; is < t.modes.size(); ++is)
            for (std::size_t m = 0; m < t.groups; ++m)
                for (std::size_t n = 0; n < t.groups; ++n)
                    out += std::to_string(t.modes[it]) + "," + std::to_string(t.modes[is]) + "," +
                           std::to_string(m) + "," + std::to_string(n) + "," +
                           format_double(std::abs(t.at(it, is, m, n))) + "\n";
    return out;
}

inline std::string frame_csv(const SymbolFrame& f, const std::vector<int>& mode_set,
                             const RunMeta& meta) {
    std::string out = meta.csv_header();
    out += "ring,mode,re,im\n";
    for (std::size_t n = 0; n < f.rings; ++n)
        for (std::size_t c = 0; c < f.modes; ++c)
            out += std::to_string(n) + "," + std::to_string(mode_set[c]) + "," +
                   format_double(f.at(n, c).real()) + "," + format_double(f.at(n, c).imag()) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Sweep results
// ---------------------------------------------------------------------------
inline std::string sweep_csv(const std::vector<SweepResult>& sweeps, const std::string& value_col,
                             const RunMeta& meta) {
    std::string out = meta.csv_header();
    out += "topology,snr_db," + value_col + "\n";
    for (const SweepResult& s : sweeps)
        for (std::size_t i = 0; i < s.values.size(); ++i)
            out += s.topology + "," + format_double(s.axis[i]) + "," + format_double(s.values[i]) +
                   "\n";
    return out;
}

inline std::string surface_csv(const SweepResult& s, const RunMeta& meta) {
    std::string out = meta.csv_header();
    out += "d_m,r_m,se_bps\n";
    for (std::size_t i = 0; i < s.values.size(); ++i)
        out += format_double(s.axis[2 * i]) + "," + format_double(s.axis[2 * i + 1]) + "," +
               format_double(s.values[i]) + "\n";
    return out;
}

inline json sweep_json(const std::vector<SweepResult>& sweeps, const std::string& value_name,
                       const RunMeta& meta) {
    json arr = json::array();
    for (const SweepResult& s : sweeps) {
        json axis = json::array(), vals = json::array();
        for (double a : s.axis) axis.push_back(round_sig(a));
        for (double v : s.values) vals.push_back(round_sig(v));
        arr.push_back({{"topology", s.topology},
                       {"axis_name", s.axis_name},
                       {"axis", axis},
                       {value_name, vals}});
    }
    return json{{"meta", meta.as_json()}, {"sweeps", arr}};
}

// ---------------------------------------------------------------------------
// Switching cost
// ---------------------------------------------------------------------------
inline std::string cost_matrix_csv(const CostMatrix& m, const RunMeta& meta) {
    std::string out = meta.csv_header();
    out += "from,to,distance_m\n";
    for (std::size_t i = 0; i < m.labels.size(); ++i)
        for (std::size_t j = 0; j < m.labels.size(); ++j)
            out += m.labels[i] + "," + m.labels[j] + "," + format_double(m.at(i, j)) + "\n";
    return out;
}

inline json cost_matrix_json(const CostMatrix& m, const RunMeta& meta) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.labels.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.labels.size(); ++j) row.push_back(round_sig(m.at(i, j)));
        rows.push_back(row);
    }
    return json{{"meta", meta.as_json()}, {"labels", m.labels}, {"distance_m", rows}};
}

// ---------------------------------------------------------------------------
// Optimizer result
// ---------------------------------------------------------------------------
inline json optimization_json(const OptimizationResult& r, const json& cfg_echo, const RunMeta& meta) {
    json radii = json::array();
    for (double v : r.params.radii) radii.push_back(round_sig(v));
    json trace = json::array();
    for (const IterationTrace& t : r.trace)
        trace.push_back({{"iteration", t.iteration},
                         {"candidates", t.candidate_count},
                         {"capacity_bps", round_sig(t.capacity_bits)}});
    json positions = json::array();
    for (const Vec3& p : r.tx_positions)
        positions.push_back({round_sig(p[0]), round_sig(p[1]), round_sig(p[2])});
    return json{{"meta", meta.as_json()},
                {"family", topology_family_name(r.family)},
                {"N", r.params.ring_count},
                {"K", r.params.elements_per_ring},
                {"radii", radii},
                {"capacity_bps", round_sig(r.capacity_bits)},
                {"trace", trace},
                {"positions", positions},
                {"seed", meta.seed},
                {"cfg", cfg_echo}};
}

} // namespace oamtopo

#endif // OAMTOPO_IO_HPP
