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

// airytrain: driver for the Airy beam training experiments.
//
//   airytrain fieldmap       --config scene.cfg --out out/
//   airytrain heights        --strategies nupc,fs1c,focusing
//   airytrain montecarlo     --seed 7 --scenarios 200
//   airytrain boundary-check
//   airytrain codebook       --kind nupc --sigma -1
//
// Results go to --out (default: out_dir of the config); a JSON summary goes to stdout.
// Failures exit nonzero with {"error": ..., "kind": ...} on stderr.

#include "airytrain/config.hpp"
#include "airytrain/errors.hpp"
#include "airytrain/experiments.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace airytrain;

namespace
{
    struct Options
    {
        std::string config;
        std::optional<std::uint64_t> seed;
        std::optional<std::string> out;
        std::optional<std::string> strategies;
        std::optional<std::size_t> scenarios;
        std::vector<std::string> overrides;
        std::string kind = "nupc";
        int sigma = +1;
    };

    ExperimentConfig resolve(const Options &o)
    {
        ExperimentConfig cfg = o.config.empty() ? ExperimentConfig{} : load_config(o.config);
        for (const auto &kv : o.overrides)
        {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw ConfigError("--set expects key=value, got '" + kv + "'");
            set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (o.seed)
            cfg.seed = *o.seed;
        if (o.out)
            cfg.out_dir = *o.out;
        if (o.strategies)
        {
            cfg.strategies = parse_strategy_list(*o.strategies);
            cfg.fieldmap_strategies = cfg.strategies;
        }
        if (o.scenarios)
            cfg.scenarios = *o.scenarios;
        cfg.validate();
        return cfg;
    }

    RunResult export_codebook(const ExperimentConfig &cfg, const std::string &kind, int sigma)
    {
        const Scene scene = cfg.free_scene();
        const TrainingPlan plan(scene, cfg.codebook);
        const Codebook &cb = plan.codebook(parse_strategy(kind), sigma);

        std::ostringstream body;
        write_codebook_table(body, cb, provenance(cfg, calibrate_snr(scene, cfg.snr_target_se)));
        std::filesystem::create_directories(cfg.out_dir);
        const auto path = std::filesystem::path(cfg.out_dir) / ("codebook_" + kind + ".csv");
        std::ofstream(path, std::ios::binary) << body.str();

        RunResult r;
        r.files.push_back(path);
        r.summary = {{"kind", kind}, {"size", cb.size()}, {"record", cb.record}};
        return r;
    }

    void report_error(const std::string &kind, const std::string &what)
    {
        std::cerr << nlohmann::json{{"error", what}, {"kind", kind}}.dump() << std::endl;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Airy beam training experiments"};
    app.require_subcommand(1);

    Options o;
    app.add_option("--config", o.config, "Flat key = value config file")->check(CLI::ExistingFile);
    app.add_option("--seed", o.seed, "RNG seed");
    app.add_option("--out", o.out, "Output directory");
    app.add_option("--strategies", o.strategies, "Comma-separated list of nupc, fs1c, hfac, focusing");
    app.add_option("--scenarios", o.scenarios, "Monte Carlo scenario count");
    app.add_option("--set", o.overrides, "Override a config key (key=value), repeatable");

    auto *fieldmap = app.add_subcommand("fieldmap", "Field maps of the winning codewords on the configured scene");
    auto *heights = app.add_subcommand("heights", "Spectral efficiency versus blockage height");
    auto *montecarlo = app.add_subcommand("montecarlo", "Spectral efficiency and overhead over random blockages");
    auto *boundary = app.add_subcommand("boundary-check", "Scalar boundary root and feasibility oracle agreement");
    auto *codebook = app.add_subcommand("codebook", "Export one codebook as a table");
    codebook->add_option("--kind", o.kind, "nupc, fs1c, hfac or focusing");
    codebook->add_option("--sigma", o.sigma, "Bending direction, +1 or -1");
    for (auto *sub : {fieldmap, heights, montecarlo, boundary, codebook})
        sub->fallthrough();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        report_error("UsageError", e.what());
        return 2;
    }

    try
    {
        const ExperimentConfig cfg = resolve(o);
        RunResult r;
        if (*fieldmap)
            r = run_field_map(cfg);
        else if (*heights)
            r = run_height_sweep(cfg);
        else if (*montecarlo)
            r = run_monte_carlo(cfg);
        else if (*boundary)
            r = run_boundary_check(cfg);
        else
            r = export_codebook(cfg, o.kind, o.sigma);

        nlohmann::json out = r.summary;
        for (const auto &f : r.files)
            out["files"].push_back(f.string());
        std::cout << out.dump(2) << std::endl;
        return 0;
    }
    catch (const ConfigError &e)
    {
        report_error(error_kind(e), e.what());
        return 2;
    }
    catch (const std::exception &e)
    {
        report_error(error_kind(e), e.what());
        return 1;
    }
}
