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

#include "airytrain/experiments.hpp"
#include "airytrain/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

namespace airytrain
{
    namespace fs = std::filesystem;

    namespace
    {
        // SE may exceed the bound by rounding only
        constexpr double kCeilingSlack = 1e-9;
        constexpr std::size_t kOverlaySamples = 201;

        double uniform(std::mt19937_64 &g, double lo, double hi)
        {
            const double u = double(g() >> 11) * 0x1.0p-53;
            return lo + (hi - lo) * u;
        }

        std::string num(const char *f, double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, f, v);
            return buf;
        }

        fs::path write_file(const ExperimentConfig &cfg, const std::string &name, const std::string &body)
        {
            const fs::path dir(cfg.out_dir);
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (ec)
                throw ConfigError("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
            const fs::path p = dir / name;
            std::ofstream out(p, std::ios::binary | std::ios::trunc);
            if (!out)
                throw ConfigError("cannot write '" + p.string() + "'");
            out << body;
            return p;
        }

        // Runs f(i) for i in [0, n) on up to `threads` workers; f writes only to slot i
        template <class F>
        void parallel_for(std::size_t n, std::size_t threads, F &&f)
        {
            if (threads == 0)
                threads = std::max(1u, std::thread::hardware_concurrency());
            threads = std::min(threads, n);
            if (threads <= 1)
            {
                for (std::size_t i = 0; i < n; ++i)
                    f(i);
                return;
            }
            std::atomic<std::size_t> next{0};
            std::exception_ptr failure;
            std::atomic<bool> failed{false};
            {
                std::vector<std::jthread> pool;
                for (std::size_t t = 0; t < threads; ++t)
                    pool.emplace_back(
                        [&]
                        {
                            for (std::size_t i; !failed && (i = next++) < n;)
                            {
                                try
                                {
                                    f(i);
                                }
                                catch (...)
                                {
                                    if (!failed.exchange(true))
                                        failure = std::current_exception();
                                }
                            }
                        });
            }
            if (failure)
                std::rethrow_exception(failure);
        }

        std::string hash_hex(const ExperimentConfig &cfg)
        {
            char buf[24];
            std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(cfg.hash()));
            return buf;
        }

        nlohmann::json report_json(const TrainingReport &r)
        {
            auto j = to_json(r);
            j.erase("powers");
            return j;
        }
    }

    std::string provenance(const ExperimentConfig &cfg, const LinkBudget &budget)
    {
        char buf[128];
        std::snprintf(buf, sizeof buf, "config_hash=%s seed=%llu rho=%.12e", hash_hex(cfg).c_str(),
                      static_cast<unsigned long long>(cfg.seed), budget.rho);
        return buf;
    }

    std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index)
    {
        std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // ---------------------------------------------------------------- field maps

    std::vector<Polyline> overlay_curves(const Scene &scene, const CodewordInfo &info)
    {
        const double zr = scene.rx_depth();
        const double dt = scene.tx.aperture();
        const double xr = info.target ? info.target->x : scene.rx.center_x;
        std::vector<Polyline> out;

        if (info.origin == BeamOrigin::airy && info.params)
        {
            Polyline t{"trajectory", {}};
            const double waist = beam_waist(scene.tx);
            for (std::size_t i = 1; i < kOverlaySamples; ++i)
            {
                const double z = zr * double(i) / double(kOverlaySamples - 1);
                const double x = trajectory(z, *info.params, waist, scene.wavelength);
                // the 1/z focal term blows up next to the aperture; keep the drawable part
                if (std::abs(x - scene.tx.center_x) <= dt)
                    t.points.push_back({z, x});
            }
            out.push_back(std::move(t));
        }

        Polyline up{"upper_boundary", {}}, lo{"lower_boundary", {}};
        for (std::size_t i = 0; i < kOverlaySamples; ++i)
        {
            const double z = zr * double(i) / double(kOverlaySamples - 1);
            up.points.push_back({z, xs_max(z, zr, xr, dt)});
            lo.points.push_back({z, xs_min(z, zr, xr, dt)});
        }
        out.push_back(std::move(up));
        out.push_back(std::move(lo));

        for (std::size_t k = 0; k < scene.blockages.size(); ++k)
        {
            const auto &b = scene.blockages[k];
            out.push_back({"blockage" + (k ? std::to_string(k) : std::string()), {{b.depth, b.x_lo}, {b.depth, b.x_hi}}});
        }
        return out;
    }

    void write_overlay_csv(std::ostream &os, const std::vector<Polyline> &curves, const std::string &comment)
    {
        os << "# " << comment << '\n' << "curve,z,x\n";
        char buf[128];
        for (const auto &c : curves)
            for (const auto &p : c.points)
            {
                std::snprintf(buf, sizeof buf, "%s,%.12g,%.12g\n", c.curve.c_str(), p.z, p.x);
                os << buf;
            }
    }

    FieldMapResult field_maps(const ExperimentConfig &cfg)
    {
        cfg.validate();
        const Scene scene = cfg.scene();
        FieldMapResult res;
        res.budget = calibrate_snr(scene, cfg.snr_target_se);

        const TrainingPlan plan(scene, cfg.codebook);
        const ChannelMatrix H = channel_matrix(scene);
        res.nupc_power = plan.run(Strategy::nupc, H, res.budget).best_power;

        const double zr = scene.rx_depth();
        const double half = 0.5 * scene.tx.aperture();
        const FieldGrid grid = FieldGrid::uniform(zr / double(cfg.field_nz), zr, cfg.field_nz,
                                                  scene.tx.center_x - half, scene.tx.center_x + half, cfg.field_nx);
        for (Strategy s : cfg.fieldmap_strategies)
        {
            FieldMapEntry e;
            e.strategy = s;
            e.report = plan.run(s, H, res.budget);
            const Codebook &cb = plan.codebook(s, e.report.sigma);
            e.map = field_map(cb.entries[e.report.best_index], grid, scene);
            e.overlay = overlay_curves(scene, e.report.best);
            res.entries.push_back(std::move(e));
        }
        return res;
    }

    RunResult run_field_map(const ExperimentConfig &cfg)
    {
        const FieldMapResult res = field_maps(cfg);
        const Scene scene = cfg.scene();
        const std::string prov = provenance(cfg, res.budget);
        RunResult out;

        auto db_rel = [&](double p) { return 10.0 * std::log10(p / res.nupc_power); };
        nlohmann::json js;
        js["config_hash"] = hash_hex(cfg);
        js["seed"] = cfg.seed;
        js["rho"] = res.budget.rho;
        js["reference"] = "nupc";
        js["reference_power"] = res.nupc_power;
        js["overhead_includes_probes"] = true;
        if (!scene.blockages.empty())
        {
            const auto &b = scene.blockages.front();
            js["blockage"] = {{"depth", b.depth}, {"x_lo", b.x_lo}, {"x_hi", b.x_hi},
                              {"ratio", blockage_ratio(scene, b)}};
        }
        for (const auto &e : res.entries)
        {
            const std::string name = to_string(e.strategy);
            std::ostringstream field, overlay;
            write_field_csv(field, e.map, prov + " strategy=" + name);
            write_overlay_csv(overlay, e.overlay, prov + " strategy=" + name);
            out.files.push_back(write_file(cfg, "field_" + name + ".csv", field.str()));
            out.files.push_back(write_file(cfg, "overlay_" + name + ".csv", overlay.str()));

            auto j = report_json(e.report);
            j["power_dB_rel_nupc"] = db_rel(e.report.best_power);
            j["field_peak"] = e.map.peak();
            j["rx_slice_argmax_x"] = e.map.argmax_x(e.map.grid.z.size() - 1);
            js["strategies"][name] = j;
        }
        out.summary = js;
        out.files.push_back(write_file(cfg, "fieldmap_summary.json", js.dump(2) + "\n"));
        return out;
    }

    // ---------------------------------------------------------------- heights

    HeightSweep height_sweep(const ExperimentConfig &cfg)
    {
        cfg.validate();
        const Scene free = cfg.free_scene();
        HeightSweep sw;
        sw.budget = calibrate_snr(free, cfg.snr_target_se);
        sw.strategies = cfg.strategies;
        const TrainingPlan plan(free, cfg.codebook);

        for (double h : cfg.heights())
        {
            Scene s = free;
            if (h > 0.0)
                s.blockages.push_back(Blockage::centered(cfg.blockage_depth, cfg.blockage_center_x, h));
            const ChannelMatrix H = channel_matrix(s);
            HeightRow row;
            row.height = h;
            row.se_digital = digital_upper_bound(H, sw.budget);
            row.sigma = plan.probe(H).sigma;
            for (Strategy st : sw.strategies)
            {
                const auto r = plan.run(st, H, sw.budget);
                row.se.push_back(r.best_se);
                row.overhead.push_back(r.overhead);
            }
            sw.rows.push_back(std::move(row));
        }
        return sw;
    }

    void write_heights_csv(std::ostream &os, const HeightSweep &sw, const std::string &comment)
    {
        os << "# " << comment << '\n' << "height,se_digital";
        for (Strategy s : sw.strategies)
            os << ",se_" << to_string(s);
        for (Strategy s : sw.strategies)
            os << ",overhead_" << to_string(s);
        os << ",sigma\n";
        for (const auto &r : sw.rows)
        {
            os << num("%.6f", r.height) << ',' << num("%.9f", r.se_digital);
            for (double v : r.se)
                os << ',' << num("%.9f", v);
            for (std::size_t v : r.overhead)
                os << ',' << v;
            os << ',' << r.sigma << '\n';
        }
    }

    RunResult run_height_sweep(const ExperimentConfig &cfg)
    {
        const HeightSweep sw = height_sweep(cfg);
        std::ostringstream csv;
        write_heights_csv(csv, sw, provenance(cfg, sw.budget));
        RunResult out;
        out.files.push_back(write_file(cfg, "heights.csv", csv.str()));
        out.summary = {{"rows", sw.rows.size()}, {"rho", sw.budget.rho}, {"seed", cfg.seed}};
        return out;
    }

    // ---------------------------------------------------------------- Monte Carlo

    Blockage draw_blockage(const ExperimentConfig &cfg, const Scene &free, std::uint64_t scenario_seed)
    {
        std::mt19937_64 g(scenario_seed);
        const double depth = uniform(g, cfg.mc_depth_lo, cfg.mc_depth_hi);
        const double height = uniform(g, cfg.mc_height_lo, cfg.mc_height_hi);
        const Interval los = los_cross_section(free, depth);
        const double center = uniform(g, los.lo, los.hi);
        return Blockage::centered(depth, center, height);
    }

    std::vector<AggregateRow> MonteCarloResult::aggregate() const
    {
        std::vector<AggregateRow> out;
        const double n = double(rows.size());
        auto add = [&](const std::string &name, auto se_of, auto ov_of)
        {
            AggregateRow a{name, 0.0, 0.0, std::numeric_limits<double>::infinity(),
                           -std::numeric_limits<double>::infinity()};
            for (const auto &r : rows)
            {
                const double se = se_of(r);
                a.mean_se += se;
                a.mean_overhead += double(ov_of(r));
                a.min_se = std::min(a.min_se, se);
                a.max_se = std::max(a.max_se, se);
            }
            a.mean_se /= n;
            a.mean_overhead /= n;
            out.push_back(a);
        };
        for (std::size_t k = 0; k < strategies.size(); ++k)
            add(to_string(strategies[k]), [k](const ScenarioRow &r) { return r.se[k]; },
                [k](const ScenarioRow &r) { return r.overhead[k]; });
        add("digital", [](const ScenarioRow &r) { return r.se_digital; }, [](const ScenarioRow &) { return 0; });
        return out;
    }

    MonteCarloResult monte_carlo(const ExperimentConfig &cfg)
    {
        cfg.validate();
        const Scene free = cfg.free_scene();
        MonteCarloResult mc;
        mc.budget = calibrate_snr(free, cfg.snr_target_se);
        mc.strategies = cfg.strategies;
        mc.rows.resize(cfg.scenarios);
        const TrainingPlan plan(free, cfg.codebook);

        parallel_for(cfg.scenarios, cfg.threads,
                     [&](std::size_t k)
                     {
                         ScenarioRow &row = mc.rows[k];
                         row.index = k;
                         row.seed = substream_seed(cfg.seed, k);
                         const Blockage b = draw_blockage(cfg, free, row.seed);
                         row.depth = b.depth;
                         row.height = b.height();
                         row.center = 0.5 * (b.x_lo + b.x_hi);
                         Scene s = free;
                         s.blockages.push_back(b);
                         const ChannelMatrix H = channel_matrix(s);
                         row.se_digital = digital_upper_bound(H, mc.budget);
                         row.sigma = plan.probe(H).sigma;
                         for (Strategy st : mc.strategies)
                         {
                             const auto r = plan.run(st, H, mc.budget);
                             row.se.push_back(r.best_se);
                             row.overhead.push_back(r.overhead);
                         }
                     });

        for (const auto &r : mc.rows)
            for (double se : r.se)
                if (se > r.se_digital + kCeilingSlack)
                    ++mc.ceiling_violations;
        return mc;
    }

    void write_scenarios_csv(std::ostream &os, const MonteCarloResult &mc, const std::string &comment)
    {
        os << "# " << comment << '\n' << "scenario,seed,z_b,height,center,sigma,se_digital";
        for (Strategy s : mc.strategies)
            os << ",se_" << to_string(s);
        for (Strategy s : mc.strategies)
            os << ",overhead_" << to_string(s);
        os << '\n';
        char buf[160];
        for (const auto &r : mc.rows)
        {
            std::snprintf(buf, sizeof buf, "%zu,%016llx,%.9f,%.9f,%.9f,%d,%.9f", r.index,
                          static_cast<unsigned long long>(r.seed), r.depth, r.height, r.center, r.sigma,
                          r.se_digital);
            os << buf;
            for (double v : r.se)
                os << ',' << num("%.9f", v);
            for (std::size_t v : r.overhead)
                os << ',' << v;
            os << '\n';
        }
    }

    void write_aggregate_csv(std::ostream &os, const MonteCarloResult &mc, const std::string &comment)
    {
        os << "# " << comment << '\n' << "strategy,mean_se,mean_overhead,min_se,max_se\n";
        char buf[160];
        for (const auto &a : mc.aggregate())
        {
            std::snprintf(buf, sizeof buf, "%s,%.9f,%.6f,%.9f,%.9f\n", a.strategy.c_str(), a.mean_se,
                          a.mean_overhead, a.min_se, a.max_se);
            os << buf;
        }
    }

    RunResult run_monte_carlo(const ExperimentConfig &cfg)
    {
        const MonteCarloResult mc = monte_carlo(cfg);
        const std::string prov = provenance(cfg, mc.budget);
        std::ostringstream scen, agg;
        write_scenarios_csv(scen, mc, prov);
        write_aggregate_csv(agg, mc, prov);

        RunResult out;
        out.files.push_back(write_file(cfg, "montecarlo_scenarios.csv", scen.str()));
        out.files.push_back(write_file(cfg, "montecarlo_aggregate.csv", agg.str()));

        nlohmann::json js;
        js["config_hash"] = hash_hex(cfg);
        js["seed"] = cfg.seed;
        js["rho"] = mc.budget.rho;
        js["scenarios"] = mc.rows.size();
        js["ceiling_violations"] = mc.ceiling_violations;
        js["overhead_includes_probes"] = true;
        for (const auto &a : mc.aggregate())
            js["aggregate"][a.strategy] = {{"mean_se", a.mean_se}, {"mean_overhead", a.mean_overhead}};
        out.summary = js;
        out.files.push_back(write_file(cfg, "montecarlo_summary.json", js.dump(2) + "\n"));
        return out;
    }

    // ---------------------------------------------------------------- oracle suite

    OracleAgreement oracle_agreement(const ExperimentConfig &cfg, std::size_t samples, std::uint64_t seed)
    {
        const Scene s = cfg.free_scene();
        const double dt = s.tx.aperture();
        const double waist = beam_waist(s.tx);
        const double zr = s.rx_depth();
        const Interval rx = s.rx.extent();
        std::mt19937_64 g(substream_seed(seed, 0));

        OracleAgreement a;
        a.samples = samples;
        for (std::size_t i = 0; i < samples; ++i)
        {
            const double zb = uniform(g, cfg.mc_depth_lo, cfg.mc_depth_hi);
            const Interval los = los_cross_section(s, zb);
            const Point wp{zb, uniform(g, los.lo, los.hi)};
            const Point tg{zr, uniform(g, rx.lo, rx.hi)};
            const int sigma = (g() >> 63) ? +1 : -1;
            const bool lin = waypoint_feasible(wp, tg, sigma, dt);
            const bool full = intercept_feasible(wp, tg, sigma, dt, s.wavelength, waist);
            if (lin == full)
                ++a.agree;
            else
            {
                const double edge = sigma > 0 ? xs_max(zb, zr, tg.x, dt) : xs_min(zb, zr, tg.x, dt);
                a.max_disagreement_offset = std::max(a.max_disagreement_offset, std::abs(wp.x - edge));
            }
        }
        return a;
    }

    BoundaryCheck boundary_check(const ExperimentConfig &cfg)
    {
        cfg.validate();
        const Scene s = cfg.free_scene();
        BoundaryCheck b;
        b.root = solve_scalar_boundary(s.tx.aperture(), s.wavelength, beam_waist(s.tx));
        b.closed_form = critical_ratio(s.tx.aperture());
        b.relative_error = std::abs(b.root.root - b.closed_form) / b.closed_form;
        b.agreement = oracle_agreement(cfg, cfg.oracle_samples, cfg.seed);
        return b;
    }

    nlohmann::json to_json(const BoundaryCheck &b)
    {
        return {{"root", b.root.root},
                {"residual", b.root.residual},
                {"iterations", b.root.iterations},
                {"closed_form", b.closed_form},
                {"relative_error", b.relative_error},
                {"oracle_samples", b.agreement.samples},
                {"oracle_agree", b.agreement.agree},
                {"oracle_agreement_rate", b.agreement.rate()},
                {"max_disagreement_offset", b.agreement.max_disagreement_offset}};
    }

    RunResult run_boundary_check(const ExperimentConfig &cfg)
    {
        const BoundaryCheck b = boundary_check(cfg);
        RunResult out;
        out.summary = to_json(b);
        out.summary["config_hash"] = hash_hex(cfg);
        out.summary["seed"] = cfg.seed;
        out.files.push_back(write_file(cfg, "boundary_check.json", out.summary.dump(2) + "\n"));
        return out;
    }
}
