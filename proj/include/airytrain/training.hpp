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

#ifndef AIRYTRAIN_TRAINING_HPP
#define AIRYTRAIN_TRAINING_HPP

#include "airytrain/channel.hpp"
#include "airytrain/codebooks.hpp"

#include <json.hpp>

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace airytrain
{
    enum class Strategy
    {
        nupc,
        fs1c,
        hfac,
        focusing
    };

    std::string to_string(Strategy s);
    Strategy parse_strategy(const std::string &name);
    std::vector<Strategy> parse_strategy_list(const std::string &csv);

    // Codebook design knobs shared by every strategy
    struct CodebookParams
    {
        double dgamma = 0.221;  // [1/m]
        double dphi = 0.02;
        double z_min = 0.5;     // [m]
        double z_p = 0.5;       // probe depth [m]
        double z_f = 0.5;       // FS1C waypoint depth [m]
        double dxs = 0.02205;   // FS1C step [m]
        TargetClamp clamp = TargetClamp::intent;
        HfacOptions hfac;
    };

    struct SweepResult
    {
        std::vector<double> powers;
        std::size_t best = 0;
    };

    // Received power of every entry; best is the argmax with lowest-index tie-break
    SweepResult sweep(const Codebook &cb, const ChannelMatrix &H);
    SweepResult sweep_matrix(const Eigen::MatrixXcd &stacked, const ChannelMatrix &H);

    struct TrainingReport
    {
        Strategy strategy = Strategy::nupc;
        int sigma = 0; // 0 when no probing was done
        std::optional<ProbeResult> probes;
        std::vector<double> powers;
        std::size_t best_index = 0;
        double best_power = 0.0;
        double best_se = 0.0;
        std::size_t probe_count = 0;
        std::size_t swept = 0;
        std::size_t overhead = 0; // probe_count + swept
        CodewordInfo best;
    };

    nlohmann::json to_json(const TrainingReport &r);
    // Flat summary: strategy,sigma,best_index,best_power,best_se,probe_count,swept,overhead
    std::string csv_header_row();
    std::string csv_summary_row(const TrainingReport &r);

    // All codebooks of a scene geometry, built once. Blockages only enter through the channel,
    // so one plan serves every blockage configuration of the same arrays.
    class TrainingPlan
    {
    public:
        TrainingPlan(const Scene &geometry, const CodebookParams &params);

        TrainingReport run(Strategy strategy, const ChannelMatrix &H, const LinkBudget &budget) const;
        ProbeResult probe(const ChannelMatrix &H) const;

        const Codebook &codebook(Strategy strategy, int sigma = +1) const;
        const std::pair<Codeword, Codeword> &probes() const { return probes_; }
        const CodebookParams &params() const { return params_; }

    private:
        struct Stacked
        {
            Codebook book;
            Eigen::MatrixXcd matrix;
        };
        static Stacked stacked(Codebook cb);
        TrainingReport sweep_report(Strategy s, const Stacked &book, const ChannelMatrix &H,
                                    const LinkBudget &budget) const;

        CodebookParams params_;
        std::pair<Codeword, Codeword> probes_;
        std::array<Stacked, 2> nupc_; // [sigma=+1, sigma=-1]
        std::array<Stacked, 2> fs1c_;
        Stacked hfac_;
        Stacked focusing_;
    };

    TrainingReport train(const Scene &scene, Strategy strategy, const LinkBudget &budget,
                         const CodebookParams &params = {});

    struct CompareRow
    {
        std::string strategy; // strategy name or "digital"
        double se = 0.0;
        std::size_t overhead = 0;
        int sigma = 0;
    };

    // One row per strategy, followed by the digital upper bound reference row
    std::vector<CompareRow> compare(const Scene &scene, const std::vector<Strategy> &strategies,
                                    const LinkBudget &budget, const CodebookParams &params = {});

    void write_compare_csv(std::ostream &os, const std::vector<CompareRow> &rows, const std::string &comment = "");
}

#endif
