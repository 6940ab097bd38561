// SPDX-License-Identifier: Apache-2.0
//
// airytrain - Airy beam training for near-field THz links
// Copyright (C) 2026 The airytrain authors
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

#include "airytrain/config.hpp"
#include "airytrain/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace airytrain
{
    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return {};
            return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
        }

        double to_double(const std::string &key, const std::string &v)
        {
            double out = 0.0;
            const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
            if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(out))
                throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
            return out;
        }

        std::uint64_t to_u64(const std::string &key, const std::string &v)
        {
            std::uint64_t out = 0;
            const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
            if (ec != std::errc() || p != v.data() + v.size())
                throw ConfigError("config key '" + key + "': expected a non-negative integer, got '" + v + "'");
            return out;
        }

        std::string fmt(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        std::string join(const std::vector<Strategy> &list)
        {
            std::string s;
            for (std::size_t i = 0; i < list.size(); ++i)
                s += (i ? "," : "") + to_string(list[i]);
            return s;
        }

        struct Field
        {
            const char *name;
            std::function<void(ExperimentConfig &, const std::string &)> set;
            std::function<std::string(const ExperimentConfig &)> get;
            bool hashed = true;
        };

#define AT_REAL(key, member)                                                                      \
    Field{key, [](ExperimentConfig &c, const std::string &v) { c.member = to_double(key, v); },   \
          [](const ExperimentConfig &c) { return fmt(c.member); }}
#define AT_COUNT(key, member)                                                                     \
    Field{key, [](ExperimentConfig &c, const std::string &v) { c.member = to_u64(key, v); },      \
          [](const ExperimentConfig &c) { return std::to_string(c.member); }}

        const std::vector<Field> &fields()
        {
            static const std::vector<Field> table = {
                AT_REAL("carrier_frequency_hz", carrier_hz),
                AT_COUNT("tx_elements", tx_elements),
                AT_COUNT("rx_elements", rx_elements),
                AT_REAL("element_spacing_wavelengths", spacing_wavelengths),
                AT_REAL("rx_distance_m", rx_distance),
                AT_REAL("rx_center_x_m", rx_center_x),
                AT_REAL("blockage_depth_m", blockage_depth),
                AT_REAL("blockage_height_m", blockage_height),
                AT_REAL("blockage_center_x_m", blockage_center_x),
                Field{"strategies",
                      [](ExperimentConfig &c, const std::string &v) { c.strategies = parse_strategy_list(v); },
                      [](const ExperimentConfig &c) { return join(c.strategies); }},
                Field{"fieldmap_strategies",
                      [](ExperimentConfig &c, const std::string &v) { c.fieldmap_strategies = parse_strategy_list(v); },
                      [](const ExperimentConfig &c) { return join(c.fieldmap_strategies); }},
                AT_REAL("snr_target_se", snr_target_se),
                AT_REAL("nupc_dgamma", codebook.dgamma),
                AT_REAL("nupc_dphi", codebook.dphi),
                AT_REAL("z_min_m", codebook.z_min),
                AT_REAL("probe_depth_m", codebook.z_p),
                AT_REAL("fs1c_depth_m", codebook.z_f),
                AT_REAL("fs1c_step_m", codebook.dxs),
                Field{"target_clamp",
                      [](ExperimentConfig &c, const std::string &v)
                      {
                          if (v == "intent")
                              c.codebook.clamp = TargetClamp::intent;
                          else if (v == "literal")
                              c.codebook.clamp = TargetClamp::literal;
                          else
                              throw ConfigError("config key 'target_clamp': expected intent or literal, got '" + v + "'");
                      },
                      [](const ExperimentConfig &c)
                      { return std::string(c.codebook.clamp == TargetClamp::intent ? "intent" : "literal"); }},
                AT_REAL("hfac_s_a", codebook.hfac.s_a),
                AT_REAL("hfac_s_r", codebook.hfac.s_r),
                AT_REAL("hfac_s_theta", codebook.hfac.s_theta),
                AT_REAL("hfac_curvature_max", codebook.hfac.curvature_max),
                AT_REAL("hfac_focal_lo", codebook.hfac.focal_lo),
                AT_REAL("hfac_focal_hi", codebook.hfac.focal_hi),
                AT_REAL("height_start_m", height_start),
                AT_REAL("height_stop_m", height_stop),
                AT_REAL("height_step_m", height_step),
                AT_COUNT("scenarios", scenarios),
                AT_REAL("mc_depth_lo_m", mc_depth_lo),
                AT_REAL("mc_depth_hi_m", mc_depth_hi),
                AT_REAL("mc_height_lo_m", mc_height_lo),
                AT_REAL("mc_height_hi_m", mc_height_hi),
                AT_COUNT("field_nz", field_nz),
                AT_COUNT("field_nx", field_nx),
                AT_COUNT("oracle_samples", oracle_samples),
                Field{"threads", [](ExperimentConfig &c, const std::string &v) { c.threads = to_u64("threads", v); },
                      [](const ExperimentConfig &c) { return std::to_string(c.threads); }, false},
                Field{"seed", [](ExperimentConfig &c, const std::string &v) { c.seed = to_u64("seed", v); },
                      [](const ExperimentConfig &c) { return std::to_string(c.seed); }, false},
                Field{"out_dir", [](ExperimentConfig &c, const std::string &v) { c.out_dir = v; },
                      [](const ExperimentConfig &c) { return c.out_dir; }, false},
            };
            return table;
        }
#undef AT_REAL
#undef AT_COUNT

        void require(bool ok, const std::string &what)
        {
            if (!ok)
                throw ConfigError("invalid config: " + what);
        }
    }

    Scene ExperimentConfig::free_scene() const
    {
        return make_scene(carrier_hz, tx_elements, rx_elements, rx_distance, rx_center_x, spacing_wavelengths);
    }

    Scene ExperimentConfig::scene() const
    {
        Scene s = free_scene();
        if (blockage_height > 0.0)
            s.blockages.push_back(Blockage::centered(blockage_depth, blockage_center_x, blockage_height));
        return s;
    }

    std::vector<double> ExperimentConfig::heights() const
    {
        const auto n = std::size_t(std::llround((height_stop - height_start) / height_step)) + 1;
        std::vector<double> h(n);
        for (std::size_t i = 0; i < n; ++i)
            h[i] = height_start + double(i) * height_step;
        return h;
    }

    void ExperimentConfig::validate() const
    {
        require(carrier_hz > 0.0, "carrier_frequency_hz must be positive");
        require(tx_elements >= 2 && rx_elements >= 2, "arrays need at least two elements");
        require(spacing_wavelengths > 0.0, "element_spacing_wavelengths must be positive");
        require(rx_distance > 0.0, "rx_distance_m must be positive");
        require(blockage_height >= 0.0, "blockage_height_m must be non-negative");
        require(blockage_depth > 0.0 && blockage_depth < rx_distance,
                "blockage_depth_m must lie strictly between the arrays");
        require(!strategies.empty(), "strategies is empty");
        require(!fieldmap_strategies.empty(), "fieldmap_strategies is empty");
        require(snr_target_se > 0.0, "snr_target_se must be positive");

        const auto &cb = codebook;
        require(cb.dgamma > 0.0 && cb.dphi > 0.0 && cb.dxs > 0.0, "codebook steps must be positive");
        require(cb.z_min > 0.0 && cb.z_min < rx_distance, "z_min_m must lie in (0, rx_distance_m)");
        require(cb.z_p > 0.0 && cb.z_p < rx_distance, "probe_depth_m must lie in (0, rx_distance_m)");
        require(cb.z_f > 0.0 && cb.z_f < rx_distance, "fs1c_depth_m must lie in (0, rx_distance_m)");
        require(cb.hfac.s_a > 0.0 && cb.hfac.s_r > 0.0 && cb.hfac.s_theta > 0.0, "hfac steps must be positive");
        require(cb.hfac.curvature_max >= 0.0, "hfac_curvature_max must be non-negative (0 = automatic)");
        require(cb.hfac.focal_lo >= 0.0 && cb.hfac.focal_hi > 0.0, "hfac focal range must be positive");
        require(cb.hfac.focal_lo == 0.0 || cb.hfac.focal_lo <= cb.hfac.focal_hi, "hfac_focal_lo exceeds hfac_focal_hi");

        require(height_step > 0.0, "height_step_m must be positive");
        require(height_start >= 0.0 && height_stop >= height_start, "height range must satisfy 0 <= start <= stop");

        require(scenarios >= 1, "scenarios must be at least 1");
        require(mc_depth_lo > 0.0 && mc_depth_lo <= mc_depth_hi && mc_depth_hi < rx_distance,
                "Monte Carlo depth range must satisfy 0 < lo <= hi < rx_distance_m");
        require(mc_height_lo >= 0.0 && mc_height_lo <= mc_height_hi, "Monte Carlo height range must satisfy 0 <= lo <= hi");

        require(field_nz >= 2 && field_nx >= 2, "field map needs at least 2x2 samples");
        require(oracle_samples >= 1, "oracle_samples must be at least 1");
    }

    std::string ExperimentConfig::canonical() const
    {
        std::string s;
        for (const auto &f : fields())
            if (f.hashed)
                s += std::string(f.name) + " = " + f.get(*this) + "\n";
        return s;
    }

    std::uint64_t ExperimentConfig::hash() const
    {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : canonical())
        {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    void set_config_value(ExperimentConfig &cfg, const std::string &key, const std::string &value)
    {
        for (const auto &f : fields())
            if (key == f.name)
            {
                f.set(cfg, value);
                return;
            }
        throw ConfigError("unknown config key '" + key + "'");
    }

    std::vector<std::string> config_keys()
    {
        std::vector<std::string> keys;
        for (const auto &f : fields())
            keys.emplace_back(f.name);
        return keys;
    }

    ExperimentConfig parse_config(std::istream &is, ExperimentConfig base)
    {
        std::set<std::string> seen;
        std::string line;
        for (int lineno = 1; std::getline(is, line); ++lineno)
        {
            if (const auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty() || value.empty())
                throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
            if (!seen.insert(key).second)
                throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
            set_config_value(base, key, value);
        }
        return base;
    }

    ExperimentConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open config file '" + path + "'");
        return parse_config(in);
    }
}
