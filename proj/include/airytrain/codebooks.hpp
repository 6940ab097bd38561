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

#ifndef AIRYTRAIN_CODEBOOKS_HPP
#define AIRYTRAIN_CODEBOOKS_HPP

#include "airytrain/airy.hpp"
#include "airytrain/geometry.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace airytrain
{
    enum class CodebookKind
    {
        probe,
        nupc,
        fs1c,
        hfac,
        focusing
    };

    std::string to_string(CodebookKind kind);

    struct Codebook
    {
        CodebookKind kind = CodebookKind::nupc;
        std::vector<Codeword> entries;
        // Generation parameters and pruning counters, keyed by name
        std::map<std::string, double> record;

        std::size_t size() const { return entries.size(); }
        bool empty() const { return entries.empty(); }
    };

    // Uniform sampling lattice in (gamma = 1/z, phi = x/z); the phi levels are symmetric about 0
    // and cover [-phi_max, phi_max]
    struct PolarGrid
    {
        double gamma_min = 0.0;
        double gamma_max = 0.0;
        double phi_max = 0.0;
        double dgamma = 0.0;
        double dphi = 0.0;
        std::size_t levels_gamma = 0; // M
        std::size_t levels_phi = 0;   // N

        std::size_t size() const { return levels_gamma * levels_phi; }
        // Candidate waypoint (m, n) mapped back to Cartesian coordinates
        Point waypoint(std::size_t m, std::size_t n) const;
    };

    PolarGrid make_polar_grid(const Scene &scene, double z_min, double dgamma, double dphi);

    struct ProbeResult
    {
        double energy_up = 0.0;
        double energy_down = 0.0;
        int sigma = +1;
    };

    // Upward (sigma = +1) and downward (sigma = -1) probes anchored on the feasibility
    // boundaries at depth z_p and aimed at the Rx aperture edges
    std::pair<Codeword, Codeword> probe_pair(const Scene &scene, double z_p);

    // +1 if the upward probe collected at least as much energy, else -1
    int resolve_direction(double energy_up, double energy_down);

    // Rx target selection for a surviving NUPC waypoint.
    // intent:  x_r = min(x_c + D_r/2, max(x_c, x_bound))           (mirrored for sigma = -1)
    // literal: x_r = max(D_r/2, min(x_c, x_bound))                 (mirrored for sigma = -1)
    enum class TargetClamp
    {
        intent,
        literal
    };

    double nupc_target(const Scene &scene, Point waypoint, int sigma, TargetClamp clamp = TargetClamp::intent);

    Codebook nupc_generate(const Scene &scene, const PolarGrid &grid, int sigma,
                           TargetClamp clamp = TargetClamp::intent);

    // Waypoint range [x_s^min, x_s^max] of the 1D sweep at depth z_f and the Rx target of a waypoint
    struct Fs1cRange
    {
        double xs_lo = 0.0;
        double xs_hi = 0.0;
        std::size_t count = 0;
        double step = 0.0; // effective spacing, (xs_hi - xs_lo) / (count - 1)
    };

    Fs1cRange fs1c_range(const Scene &scene, double z_f, double dxs, int sigma);

    Codebook fs1c_generate(const Scene &scene, double z_f, double dxs, int sigma);

    struct HfacOptions
    {
        double s_a = 0.25;              // curvature step, normalized to curvature_max
        double s_r = 1.0 / 3.0;         // focal step, normalized to z_r
        double s_theta = 0.0078;        // steering step [rad]
        double curvature_max = 0.0;     // [1/m]; 0 selects |B| of the upward probe design
        double focal_lo = 0.0;          // normalized; 0 selects z_min / z_r
        double focal_hi = 1.0;          // normalized
        double z_min = 0.5;             // [m], used for the automatic focal_lo and curvature_max
    };

    // Parameter-grid baseline: curvature x focal distance x steering, each mapped directly
    // to a phase profile
    Codebook hfac_generate(const Scene &scene, const HfacOptions &options);

    Codebook focusing_codebook(const Scene &scene);

    // Number of inclusive levels of a range sampled with the given step
    std::size_t level_count(double range, double step);

    // Columns index, kind, z_b, x_s, x_r, B, F, theta, sigma
    void write_codebook_table(std::ostream &os, const Codebook &cb, const std::string &comment = "");
}

#endif
