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

#include "airytrain/errors.hpp"
#include "airytrain/experiments.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace airytrain;
namespace fs = std::filesystem;

namespace
{
    fs::path scratch_dir(const std::string &name)
    {
        const fs::path p = fs::temp_directory_path() / ("airytrain_tests_" + name);
        fs::remove_all(p);
        return p;
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }

    std::vector<std::string> lines(const std::string &text)
    {
        std::vector<std::string> out;
        std::istringstream is(text);
        for (std::string l; std::getline(is, l);)
            out.push_back(l);
        return out;
    }

    ExperimentConfig quick_config(const std::string &name)
    {
        ExperimentConfig c;
        c.out_dir = scratch_dir(name).string();
        c.field_nz = 12;
        c.field_nx = 9;
        c.scenarios = 4;
        c.height_step = 0.05;
        c.oracle_samples = 200;
        return c;
    }
}

TEST_CASE("provenance line")
{
    ExperimentConfig c;
    const std::string p = provenance(c, {2.5});
    CHECK(p.rfind("config_hash=", 0) == 0);
    CHECK(p.find(" seed=7 ") != std::string::npos);
    CHECK(p.find("rho=2.5") != std::string::npos);
}

TEST_CASE("sub-seeds")
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t k = 0; k < 1000; ++k)
        seen.insert(substream_seed(7, k));
    CHECK(seen.size() == 1000);
    CHECK(substream_seed(7, 3) == substream_seed(7, 3));
    CHECK(substream_seed(7, 3) != substream_seed(8, 3));
}

TEST_CASE("blockage draws stay inside the configured ranges")
{
    ExperimentConfig c;
    const Scene free = c.free_scene();
    for (std::uint64_t k = 0; k < 500; ++k)
    {
        const Blockage b = draw_blockage(c, free, substream_seed(c.seed, k));
        CHECK(b.depth >= c.mc_depth_lo);
        CHECK(b.depth <= c.mc_depth_hi);
        CHECK(b.height() >= c.mc_height_lo - 1e-15);
        CHECK(b.height() <= c.mc_height_hi + 1e-15);
        CHECK(los_cross_section(free, b.depth).contains(0.5 * (b.x_lo + b.x_hi), 1e-12));
    }
}

TEST_CASE("overlay curves")
{
    const ExperimentConfig c;
    const Scene s = c.scene();
    const auto cw = design_codeword({1.5, 0.1}, {3.0, 0.05}, +1, s.tx, s.wavelength);
    const auto curves = overlay_curves(s, cw.info);
    REQUIRE(curves.size() == 4);
    CHECK(curves[0].curve == "trajectory");
    CHECK(curves[0].points.back().z == doctest::Approx(3.0));
    CHECK(curves[0].points.back().x == doctest::Approx(0.05).scale(1e-9));
    const auto &up = curves[1];
    CHECK(up.curve == "upper_boundary");
    CHECK(up.points.front().z == 0.0);
    CHECK(up.points.front().x == doctest::Approx(5 * s.tx.aperture() / 12).epsilon(1e-12));
    CHECK(up.points.back().z == doctest::Approx(3.0));
    CHECK(up.points.back().x == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(curves[2].points.front().x == doctest::Approx(-5 * s.tx.aperture() / 12).epsilon(1e-12));
    CHECK(curves[3].curve == "blockage");
    for (const auto &p : curves[0].points)
        CHECK(std::abs(p.x) <= s.tx.aperture());

    std::ostringstream os;
    write_overlay_csv(os, curves, "x");
    const auto l = lines(os.str());
    CHECK(l[0] == "# x");
    CHECK(l[1] == "curve,z,x");
}

TEST_CASE("field map run")
{
    const auto c = quick_config("fieldmap");
    const auto r = run_field_map(c);
    std::set<std::string> names;
    for (const auto &f : r.files)
        names.insert(f.filename().string());
    CHECK(names == std::set<std::string>{"field_nupc.csv", "field_fs1c.csv", "field_focusing.csv",
                                         "overlay_nupc.csv", "overlay_fs1c.csv", "overlay_focusing.csv",
                                         "fieldmap_summary.json"});

    const auto field = lines(slurp(fs::path(c.out_dir) / "field_nupc.csv"));
    CHECK(field[0].rfind("# config_hash=", 0) == 0);
    CHECK(field[1] == "z,x,intensity,intensity_dB");
    CHECK(field.size() == 2 + 12 * 9);

    const auto &js = r.summary;
    CHECK(js.at("strategies").at("nupc").at("power_dB_rel_nupc") == 0.0);
    // FS1C winner within 1.5 dB of the NUPC winner on the reference scene
    CHECK(js.at("strategies").at("fs1c").at("power_dB_rel_nupc").get<double>() > -1.5);
    CHECK(js.at("blockage").at("ratio").get<double>() == doctest::Approx(0.6584).epsilon(1e-4));

    auto empty = c;
    empty.fieldmap_strategies.clear();
    CHECK_THROWS_AS(run_field_map(empty), ConfigError);
}

TEST_CASE("height sweep")
{
    const auto c = quick_config("heights");
    const auto sw = height_sweep(c);
    REQUIRE(sw.rows.size() == 4);
    CHECK(sw.rows[0].height == 0.0);
    CHECK(sw.rows[0].se_digital == doctest::Approx(15.5).epsilon(1e-12));
    const auto fi = std::find(c.strategies.begin(), c.strategies.end(), Strategy::focusing) - c.strategies.begin();
    CHECK(std::abs(sw.rows[0].se[std::size_t(fi)] - 15.5) < 0.2);
    for (const auto &row : sw.rows)
        for (double se : row.se)
            CHECK(se <= row.se_digital + 1e-9);

    run_height_sweep(c);
    const auto l = lines(slurp(fs::path(c.out_dir) / "heights.csv"));
    CHECK(l[0].rfind("# config_hash=", 0) == 0);
    CHECK(l[1] == "height,se_digital,se_nupc,se_fs1c,se_hfac,se_focusing,overhead_nupc,overhead_fs1c,"
                  "overhead_hfac,overhead_focusing,sigma");
    CHECK(l.size() == 6);
}

TEST_CASE("Monte Carlo determinism")
{
    auto a = quick_config("mc_a");
    auto b = quick_config("mc_b");
    a.scenarios = b.scenarios = 1;
    run_monte_carlo(a);
    run_monte_carlo(b);
    for (const char *f : {"montecarlo_scenarios.csv", "montecarlo_aggregate.csv"})
        CHECK(slurp(fs::path(a.out_dir) / f) == slurp(fs::path(b.out_dir) / f));

    SUBCASE("thread count does not change the output")
    {
        auto one = quick_config("mc_t1"), many = quick_config("mc_t3");
        one.threads = 1;
        many.threads = 3;
        run_monte_carlo(one);
        run_monte_carlo(many);
        CHECK(slurp(fs::path(one.out_dir) / "montecarlo_scenarios.csv") ==
              slurp(fs::path(many.out_dir) / "montecarlo_scenarios.csv"));
    }
    SUBCASE("different seeds draw different scenarios")
    {
        auto other = quick_config("mc_seed");
        other.scenarios = 1;
        other.seed = 8;
        run_monte_carlo(other);
        CHECK(slurp(fs::path(a.out_dir) / "montecarlo_scenarios.csv") !=
              slurp(fs::path(other.out_dir) / "montecarlo_scenarios.csv"));
    }
}

TEST_CASE("Monte Carlo tables")
{
    const auto c = quick_config("mc_tables");
    const auto mc = monte_carlo(c);
    CHECK(mc.rows.size() == 4);
    CHECK(mc.ceiling_violations == 0);
    const auto agg = mc.aggregate();
    REQUIRE(agg.size() == 5);
    CHECK(agg.back().strategy == "digital");
    CHECK(agg[1].strategy == "fs1c");
    CHECK(agg[1].mean_overhead < agg[0].mean_overhead);
    CHECK(agg[0].mean_overhead < agg[2].mean_overhead);

    std::ostringstream os;
    write_aggregate_csv(os, mc, "p");
    const auto l = lines(os.str());
    CHECK(l[1] == "strategy,mean_se,mean_overhead,min_se,max_se");
    CHECK(l.size() == 7);

    std::ostringstream sc;
    write_scenarios_csv(sc, mc, "p");
    CHECK(lines(sc.str())[1].rfind("scenario,seed,z_b,height,center,sigma,se_digital,se_nupc,", 0) == 0);

    auto none = c;
    none.scenarios = 0;
    CHECK_THROWS_AS(monte_carlo(none), ConfigError);
}

TEST_CASE("boundary check")
{
    const auto c = quick_config("boundary");
    const auto b = boundary_check(c);
    CHECK(b.relative_error < 0.05);
    CHECK(std::abs(b.root.residual) < 1e-8);
    CHECK(b.agreement.samples == 200);
    CHECK(b.agreement.rate() >= 0.99);
    const auto j = to_json(b);
    CHECK(j.contains("root"));
    CHECK(j.contains("oracle_agreement_rate"));
}
