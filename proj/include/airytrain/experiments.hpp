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

#ifndef AIRYTRAIN_EXPERIMENTS_HPP
#define AIRYTRAIN_EXPERIMENTS_HPP

#include "airytrain/config.hpp"
#include "airytrain/feasibility.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace airytrain
{
    // "config_hash=<hex> seed=<n> rho=<value>", the first (comment) line of every output file
    std::string provenance(const ExperimentConfig &cfg, const LinkBudget &budget);

    // Independent per-index stream: sub-seed derived from (seed, index) by a splitmix64 counter
    std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

    struct RunResult
    {
        std::vector<std::filesystem::path> files;
        nlohmann::json summary;
    };

    // ---- field maps ----

    struct Polyline
    {
        std::string curve;
        std::vector<Point> points;
    };

    struct FieldMapEntry
    {
        Strategy strategy = Strategy::nupc;
        TrainingReport report;
        FieldMap map;
        std::vector<Polyline> overlay;
    };

    struct FieldMapResult
    {
        LinkBudget budget;
        double nupc_power = 0.0; // reference for the dB column
        std::vector<FieldMapEntry> entries;
    };

    FieldMapResult field_maps(const ExperimentConfig &cfg);
    // Trajectory of the winning codeword (when it is an Airy design), both linear
    // feasibility boundaries through its target, and the blockage bar
    std::vector<Polyline> overlay_curves(const Scene &scene, const CodewordInfo &info);
    void write_overlay_csv(std::ostream &os, const std::vector<Polyline> &curves, const std::string &comment);
    RunResult run_field_map(const ExperimentConfig &cfg);

    // ---- blockage height sweep ----

    struct HeightRow
    {
        double height = 0.0;
        double se_digital = 0.0;
        int sigma = 0;
        std::vector<double> se;              // per configured strategy
        std::vector<std::size_t> overhead;
    };

    struct HeightSweep
    {
        LinkBudget budget;
        std::vector<Strategy> strategies;
        std::vector<HeightRow> rows;
    };

    HeightSweep height_sweep(const ExperimentConfig &cfg);
    void write_heights_csv(std::ostream &os, const HeightSweep &sweep, const std::string &comment);
    RunResult run_height_sweep(const ExperimentConfig &cfg);

    // ---- Monte Carlo ----

    struct ScenarioRow
    {
        std::size_t index = 0;
        std::uint64_t seed = 0;
        double depth = 0.0;
        double height = 0.0;
        double center = 0.0;
        int sigma = 0;
        double se_digital = 0.0;
        std::vector<double> se;
        std::vector<std::size_t> overhead;
    };

    struct AggregateRow
    {
        std::string strategy;
        double mean_se = 0.0;
        double mean_overhead = 0.0;
        double min_se = 0.0;
        double max_se = 0.0;
    };

    struct MonteCarloResult
    {
        LinkBudget budget;
        std::vector<Strategy> strategies;
        std::vector<ScenarioRow> rows;
        std::size_t ceiling_violations = 0; // strategy SE above the digital bound of its channel

        // One row per strategy followed by the digital bound ("digital", overhead 0)
        std::vector<AggregateRow> aggregate() const;
    };

    // Blockage draw of scenario k: depth, height, then center within the LoS cross-section
    Blockage draw_blockage(const ExperimentConfig &cfg, const Scene &free, std::uint64_t scenario_seed);

    MonteCarloResult monte_carlo(const ExperimentConfig &cfg);
    void write_scenarios_csv(std::ostream &os, const MonteCarloResult &mc, const std::string &comment);
    void write_aggregate_csv(std::ostream &os, const MonteCarloResult &mc, const std::string &comment);
    RunResult run_monte_carlo(const ExperimentConfig &cfg);

    // ---- feasibility oracle suite ----

    struct OracleAgreement
    {
        std::size_t samples = 0;
        std::size_t agree = 0;
        double max_disagreement_offset = 0.0; // largest |x_s - boundary| among disagreements [m]

        double rate() const { return samples ? double(agree) / double(samples) : 0.0; }
    };

    // Linear-boundary verdict vs. intercept verdict on random (waypoint, target, sigma) tuples:
    // z_b uniform on the Monte Carlo depth range, x_s uniform in the LoS cross-section,
    // x_r uniform on the Rx aperture
    OracleAgreement oracle_agreement(const ExperimentConfig &cfg, std::size_t samples, std::uint64_t seed);

    struct BoundaryCheck
    {
        BoundaryRoot root;
        double closed_form = 0.0;
        double relative_error = 0.0;
        OracleAgreement agreement;
    };

    BoundaryCheck boundary_check(const ExperimentConfig &cfg);
    nlohmann::json to_json(const BoundaryCheck &b);
    RunResult run_boundary_check(const ExperimentConfig &cfg);
}

#endif
