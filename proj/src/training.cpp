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

#include "airytrain/training.hpp"
#include "airytrain/errors.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace airytrain
{
    std::string to_string(Strategy s)
    {
        switch (s)
        {
        case Strategy::nupc: return "nupc";
        case Strategy::fs1c: return "fs1c";
        case Strategy::hfac: return "hfac";
        case Strategy::focusing: return "focusing";
        }
        return "unknown";
    }

    Strategy parse_strategy(const std::string &name)
    {
        if (name == "nupc") return Strategy::nupc;
        if (name == "fs1c") return Strategy::fs1c;
        if (name == "hfac") return Strategy::hfac;
        if (name == "focusing") return Strategy::focusing;
        throw ConfigError("unknown strategy '" + name + "' (expected nupc, fs1c, hfac or focusing)");
    }

    std::vector<Strategy> parse_strategy_list(const std::string &csv)
    {
        std::vector<Strategy> out;
        std::stringstream ss(csv);
        std::string item;
        while (std::getline(ss, item, ','))
        {
            const auto b = item.find_first_not_of(" \t");
            const auto e = item.find_last_not_of(" \t");
            if (b == std::string::npos)
                continue;
            out.push_back(parse_strategy(item.substr(b, e - b + 1)));
        }
        return out;
    }

    SweepResult sweep_matrix(const Eigen::MatrixXcd &stacked, const ChannelMatrix &H)
    {
        if (stacked.cols() == 0)
            throw DomainError("sweep: empty codebook");
        SweepResult r;
        r.powers = received_powers(H, stacked);
        for (std::size_t i = 1; i < r.powers.size(); ++i)
            if (r.powers[i] > r.powers[r.best])
                r.best = i;
        return r;
    }

    SweepResult sweep(const Codebook &cb, const ChannelMatrix &H)
    {
        if (cb.empty())
            throw DomainError("sweep: empty codebook");
        return sweep_matrix(stack_codewords(cb.entries), H);
    }

    TrainingPlan::Stacked TrainingPlan::stacked(Codebook cb)
    {
        Stacked s;
        s.matrix = stack_codewords(cb.entries);
        s.book = std::move(cb);
        return s;
    }

    TrainingPlan::TrainingPlan(const Scene &geometry, const CodebookParams &params)
        : params_(params)
    {
        geometry.validate();
        const Scene g = geometry.without_blockages();
        probes_ = probe_pair(g, params.z_p);
        const PolarGrid grid = make_polar_grid(g, params.z_min, params.dgamma, params.dphi);
        for (int i = 0; i < 2; ++i)
        {
            const int sigma = i == 0 ? +1 : -1;
            nupc_[std::size_t(i)] = stacked(nupc_generate(g, grid, sigma, params.clamp));
            fs1c_[std::size_t(i)] = stacked(fs1c_generate(g, params.z_f, params.dxs, sigma));
        }
        HfacOptions h = params.hfac;
        h.z_min = params.z_min;
        hfac_ = stacked(hfac_generate(g, h));
        focusing_ = stacked(focusing_codebook(g));
    }

    const Codebook &TrainingPlan::codebook(Strategy strategy, int sigma) const
    {
        const std::size_t i = sigma < 0 ? 1 : 0;
        switch (strategy)
        {
        case Strategy::nupc: return nupc_[i].book;
        case Strategy::fs1c: return fs1c_[i].book;
        case Strategy::hfac: return hfac_.book;
        case Strategy::focusing: return focusing_.book;
        }
        throw DomainError("TrainingPlan::codebook: unknown strategy");
    }

    ProbeResult TrainingPlan::probe(const ChannelMatrix &H) const
    {
        ProbeResult r;
        r.energy_up = received_power(H, probes_.first);
        r.energy_down = received_power(H, probes_.second);
        r.sigma = resolve_direction(r.energy_up, r.energy_down);
        return r;
    }

    TrainingReport TrainingPlan::sweep_report(Strategy s, const Stacked &book, const ChannelMatrix &H,
                                              const LinkBudget &budget) const
    {
        const SweepResult sw = sweep_matrix(book.matrix, H);
        TrainingReport r;
        r.strategy = s;
        r.best_index = sw.best;
        r.best_power = sw.powers[sw.best];
        r.best_se = spectral_efficiency(r.best_power, budget);
        r.swept = sw.powers.size();
        r.best = book.book.entries[sw.best].info;
        r.powers = std::move(sw.powers);
        return r;
    }

    TrainingReport TrainingPlan::run(Strategy strategy, const ChannelMatrix &H, const LinkBudget &budget) const
    {
        TrainingReport r;
        switch (strategy)
        {
        case Strategy::nupc:
        case Strategy::fs1c:
        {
            const ProbeResult pr = probe(H);
            const std::size_t i = pr.sigma > 0 ? 0 : 1;
            r = sweep_report(strategy, strategy == Strategy::nupc ? nupc_[i] : fs1c_[i], H, budget);
            r.sigma = pr.sigma;
            r.probes = pr;
            r.probe_count = 2;
            break;
        }
        case Strategy::hfac:
            r = sweep_report(strategy, hfac_, H, budget);
            break;
        case Strategy::focusing:
            r = sweep_report(strategy, focusing_, H, budget);
            break;
        }
        r.overhead = r.probe_count + r.swept;
        return r;
    }

    TrainingReport train(const Scene &scene, Strategy strategy, const LinkBudget &budget, const CodebookParams &params)
    {
        const TrainingPlan plan(scene, params);
        return plan.run(strategy, channel_matrix(scene), budget);
    }

    std::vector<CompareRow> compare(const Scene &scene, const std::vector<Strategy> &strategies,
                                    const LinkBudget &budget, const CodebookParams &params)
    {
        const TrainingPlan plan(scene, params);
        const ChannelMatrix H = channel_matrix(scene);
        std::vector<CompareRow> rows;
        for (Strategy s : strategies)
        {
            const TrainingReport r = plan.run(s, H, budget);
            rows.push_back({to_string(s), r.best_se, r.overhead, r.sigma});
        }
        rows.push_back({"digital", digital_upper_bound(H, budget), 0, 0});
        return rows;
    }

    void write_compare_csv(std::ostream &os, const std::vector<CompareRow> &rows, const std::string &comment)
    {
        if (!comment.empty())
            os << "# " << comment << '\n';
        os << "strategy,se,overhead,sigma\n";
        char buf[128];
        for (const auto &r : rows)
        {
            std::snprintf(buf, sizeof buf, "%s,%.9f,%zu,%d\n", r.strategy.c_str(), r.se, r.overhead, r.sigma);
            os << buf;
        }
    }

    namespace
    {
        nlohmann::json info_json(const CodewordInfo &info)
        {
            nlohmann::json j;
            switch (info.origin)
            {
            case BeamOrigin::airy: j["origin"] = "airy"; break;
            case BeamOrigin::focusing: j["origin"] = "focusing"; break;
            case BeamOrigin::grid: j["origin"] = "grid"; break;
            }
            if (info.waypoint)
                j["waypoint"] = {{"z", info.waypoint->z}, {"x", info.waypoint->x}};
            if (info.target)
                j["target"] = {{"z", info.target->z}, {"x", info.target->x}};
            if (info.params)
                j["params"] = {{"B", info.params->B}, {"F", info.params->F},
                               {"theta", info.params->theta}, {"sigma", info.params->sigma}};
            return j;
        }
    }

    nlohmann::json to_json(const TrainingReport &r)
    {
        nlohmann::json j;
        j["strategy"] = to_string(r.strategy);
        j["sigma"] = r.sigma;
        if (r.probes)
            j["probes"] = {{"energy_up", r.probes->energy_up},
                           {"energy_down", r.probes->energy_down},
                           {"sigma", r.probes->sigma}};
        j["powers"] = r.powers;
        j["best_index"] = r.best_index;
        j["best_power"] = r.best_power;
        j["best_se"] = r.best_se;
        j["probe_count"] = r.probe_count;
        j["swept"] = r.swept;
        j["overhead"] = r.overhead;
        j["overhead_includes_probes"] = true;
        j["best_codeword"] = info_json(r.best);
        return j;
    }

    std::string csv_header_row()
    {
        return "strategy,sigma,best_index,best_power,best_se,probe_count,swept,overhead";
    }

    std::string csv_summary_row(const TrainingReport &r)
    {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s,%d,%zu,%.9e,%.9f,%zu,%zu,%zu", to_string(r.strategy).c_str(), r.sigma,
                      r.best_index, r.best_power, r.best_se, r.probe_count, r.swept, r.overhead);
        return buf;
    }
}
