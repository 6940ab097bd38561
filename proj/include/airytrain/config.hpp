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

#ifndef AIRYTRAIN_CONFIG_HPP
#define AIRYTRAIN_CONFIG_HPP

#include "airytrain/geometry.hpp"
#include "airytrain/training.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace airytrain
{
    // Everything an experiment run depends on. Defaults reproduce the reference 140 GHz scene.
    struct ExperimentConfig
    {
        // scene
        double carrier_hz = 140e9;
        std::size_t tx_elements = 512;
        std::size_t rx_elements = 256;
        double spacing_wavelengths = 0.5;
        double rx_distance = 3.0;
        double rx_center_x = 0.0;

        // blockage of the field-map scene; also the depth and center of the height sweep
        double blockage_depth = 1.5;
        double blockage_height = 0.135;
        double blockage_center_x = 0.0;

        std::vector<Strategy> strategies{Strategy::nupc, Strategy::fs1c, Strategy::hfac, Strategy::focusing};
        std::vector<Strategy> fieldmap_strategies{Strategy::nupc, Strategy::fs1c, Strategy::focusing};
        double snr_target_se = 15.5; // unblocked digital SE the link budget is calibrated to

        CodebookParams codebook;

        // height sweep [m]
        double height_start = 0.0;
        double height_stop = 0.15;
        double height_step = 0.005;

        // Monte Carlo
        std::size_t scenarios = 200;
        double mc_depth_lo = 0.5;
        double mc_depth_hi = 2.5;
        double mc_height_lo = 0.05;
        double mc_height_hi = 0.15;
        std::size_t threads = 0; // 0: hardware concurrency

        // field map resolution
        std::size_t field_nz = 300;
        std::size_t field_nx = 200;

        // feasibility oracle suite
        std::size_t oracle_samples = 1000;

        std::uint64_t seed = 7;
        std::string out_dir = "out";

        Scene scene() const;         // with the configured blockage
        Scene free_scene() const;    // arrays only
        std::vector<double> heights() const;
        void validate() const;

        // Canonical key = value listing; seed, out_dir and threads are excluded
        std::string canonical() const;
        std::uint64_t hash() const;
    };

    // Parses the flat format: one `key = value` per line, `#` starts a comment.
    // Unknown keys, duplicate keys and malformed values throw ConfigError.
    ExperimentConfig parse_config(std::istream &is, ExperimentConfig base = {});
    ExperimentConfig load_config(const std::string &path);

    // Single-key override, as used by the parser and the CLI flags
    void set_config_value(ExperimentConfig &cfg, const std::string &key, const std::string &value);

    std::vector<std::string> config_keys();
}

#endif
