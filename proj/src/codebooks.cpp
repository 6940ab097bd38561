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

#include "airytrain/codebooks.hpp"
#include "airytrain/errors.hpp"
#include "airytrain/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace airytrain
{
    std::string to_string(CodebookKind kind)
    {
        switch (kind)
        {
        case CodebookKind::probe: return "probe";
        case CodebookKind::nupc: return "nupc";
        case CodebookKind::fs1c: return "fs1c";
        case CodebookKind::hfac: return "hfac";
        case CodebookKind::focusing: return "focusing";
        }
        return "unknown";
    }

    std::size_t level_count(double range, double step)
    {
        if (!(step > 0.0))
            throw DomainError("level_count: step must be positive");
        if (range < 0.0)
            return 0;
        // relative slack keeps ranges that are exact multiples of the step from losing a level
        return std::size_t(std::floor(range / step * (1.0 + 1e-12) + 1e-12)) + 1;
    }

    Point PolarGrid::waypoint(std::size_t m, std::size_t n) const
    {
        const double zb = 1.0 / (gamma_min + double(m) * dgamma);
        // levels centered on the Tx boresight so the grid is mirror-symmetric and has an on-axis row
        const double phi = (double(n) - 0.5 * double(levels_phi - 1)) * dphi;
        return {zb, zb * phi};
    }

    PolarGrid make_polar_grid(const Scene &scene, double z_min, double dgamma, double dphi)
    {
        const double zr = scene.rx_depth();
        if (!(z_min > 0.0 && z_min < zr))
            throw DomainError("make_polar_grid: need 0 < z_min < z_r");
        if (!(dgamma > 0.0 && dphi > 0.0))
            throw DomainError("make_polar_grid: steps must be positive");
        PolarGrid g;
        g.gamma_min = 1.0 / zr;
        g.gamma_max = 1.0 / z_min;
        const double dt = scene.tx.aperture(), dr = scene.rx.aperture();
        g.phi_max = (dr - dt) / (2.0 * zr) + dt / (2.0 * z_min);
        g.dgamma = dgamma;
        g.dphi = dphi;
        g.levels_gamma = level_count(g.gamma_max - g.gamma_min, dgamma);
        g.levels_phi = level_count(2.0 * g.phi_max, dphi);
        return g;
    }

    std::pair<Codeword, Codeword> probe_pair(const Scene &scene, double z_p)
    {
        const double zr = scene.rx_depth();
        if (!(z_p > 0.0 && z_p <= zr))
            throw DomainError("probe_pair: need 0 < z_p <= z_r");
        const double dt = scene.tx.aperture();
        const Point up_target{zr, scene.rx.center_x + 0.5 * scene.rx.aperture()};
        const Point down_target{zr, scene.rx.center_x - 0.5 * scene.rx.aperture()};

        if (z_p == zr)
            return {focusing_codeword(up_target, scene.tx, scene.wavelength),
                    focusing_codeword(down_target, scene.tx, scene.wavelength)};

        const Point up_wp{z_p, xs_max(z_p, zr, up_target.x, dt)};
        const Point down_wp{z_p, xs_min(z_p, zr, down_target.x, dt)};
        return {design_codeword(up_wp, up_target, +1, scene.tx, scene.wavelength),
                design_codeword(down_wp, down_target, -1, scene.tx, scene.wavelength)};
    }

    int resolve_direction(double energy_up, double energy_down)
    {
        return energy_up >= energy_down ? +1 : -1;
    }

    double nupc_target(const Scene &scene, Point waypoint, int sigma, TargetClamp clamp)
    {
        const double zr = scene.rx_depth();
        const double xc = scene.rx.center_x;
        const double half = 0.5 * scene.rx.aperture();
        const double ratio = zr / waypoint.z;
        const double edge = 5.0 * scene.tx.aperture() / 12.0 * (ratio - 1.0);

        if (sigma > 0)
        {
            const double bound = ratio * waypoint.x - edge;
            if (clamp == TargetClamp::literal)
                return std::max(half, std::min(xc, bound));
            return std::min(xc + half, std::max(xc, bound));
        }
        const double bound = ratio * waypoint.x + edge;
        if (clamp == TargetClamp::literal)
            return std::min(-half, std::max(xc, bound));
        return std::max(xc - half, std::min(xc, bound));
    }

    Codebook nupc_generate(const Scene &scene, const PolarGrid &grid, int sigma, TargetClamp clamp)
    {
        if (sigma != 1 && sigma != -1)
            throw DomainError("nupc_generate: sigma must be +1 or -1");
        const double zr = scene.rx_depth();
        const double dt = scene.tx.aperture();
        const double edge_x = scene.rx.center_x + double(sigma) * 0.5 * scene.rx.aperture();

        Codebook cb;
        cb.kind = CodebookKind::nupc;
        std::size_t pruned_los = 0, pruned_boundary = 0, skipped_degenerate = 0, skipped_infeasible = 0;

        for (std::size_t m = 0; m < grid.levels_gamma; ++m)
            for (std::size_t n = 0; n < grid.levels_phi; ++n)
            {
                const Point wp = grid.waypoint(m, n);
                if (!(wp.z > 0.0 && wp.z <= zr) || !los_cross_section(scene, wp.z).contains(wp.x, kBoundarySlack))
                {
                    ++pruned_los;
                    continue;
                }
                if (!waypoint_feasible(wp, {zr, edge_x}, sigma, dt))
                {
                    ++pruned_boundary;
                    continue;
                }
                if (wp.z >= zr)
                {
                    ++skipped_degenerate;
                    continue;
                }
                const Point target{zr, nupc_target(scene, wp, sigma, clamp)};
                try
                {
                    cb.entries.push_back(design_codeword(wp, target, sigma, scene.tx, scene.wavelength));
                }
                catch (const InfeasibleDesign &)
                {
                    ++skipped_infeasible;
                }
                catch (const DegenerateGeometry &)
                {
                    ++skipped_degenerate;
                }
            }

        cb.record = {{"sigma", double(sigma)},
                     {"gamma_min", grid.gamma_min},
                     {"gamma_max", grid.gamma_max},
                     {"phi_max", grid.phi_max},
                     {"dgamma", grid.dgamma},
                     {"dphi", grid.dphi},
                     {"levels_gamma", double(grid.levels_gamma)},
                     {"levels_phi", double(grid.levels_phi)},
                     {"raw_candidates", double(grid.size())},
                     {"pruned_los", double(pruned_los)},
                     {"pruned_boundary", double(pruned_boundary)},
                     {"skipped_degenerate", double(skipped_degenerate)},
                     {"skipped_infeasible", double(skipped_infeasible)},
                     {"target_clamp_literal", clamp == TargetClamp::literal ? 1.0 : 0.0}};
        return cb;
    }

    Fs1cRange fs1c_range(const Scene &scene, double z_f, double dxs, int sigma)
    {
        const double zr = scene.rx_depth();
        if (!(z_f > 0.0 && z_f < zr))
            throw DomainError("fs1c_range: need 0 < z_f < z_r");
        if (!(dxs > 0.0))
            throw DomainError("fs1c_range: step must be positive");
        const Interval los = los_cross_section(scene, z_f);
        const double xc = scene.rx.center_x, dt = scene.tx.aperture();

        Fs1cRange r;
        if (sigma > 0)
            r = {los.lo, xs_max(z_f, zr, xc, dt)};
        else
            r = {xs_min(z_f, zr, xc, dt), los.hi};
        if (!(r.xs_hi > r.xs_lo))
            throw GenerationError("fs1c_range: empty scanning range");
        // nearest level count, endpoints hit exactly
        r.count = std::size_t(std::llround((r.xs_hi - r.xs_lo) / dxs)) + 1;
        r.count = std::max<std::size_t>(r.count, 2);
        r.step = (r.xs_hi - r.xs_lo) / double(r.count - 1);
        return r;
    }

    Codebook fs1c_generate(const Scene &scene, double z_f, double dxs, int sigma)
    {
        if (sigma != 1 && sigma != -1)
            throw DomainError("fs1c_generate: sigma must be +1 or -1");
        const Fs1cRange r = fs1c_range(scene, z_f, dxs, sigma);
        const double zr = scene.rx_depth();
        const double dr = scene.rx.aperture();
        const double xc = scene.rx.center_x;

        Codebook cb;
        cb.kind = CodebookKind::fs1c;
        std::size_t skipped = 0;
        for (std::size_t q = 0; q < r.count; ++q)
        {
            // sigma = -1 walks downward from the upper LoS edge so entry q mirrors entry q of sigma = +1
            const bool last = q + 1 == r.count;
            double xs, xr;
            if (sigma > 0)
            {
                xs = last ? r.xs_hi : r.xs_lo + double(q) * r.step;
                xr = (xc - 0.5 * dr) + dr * (xs - r.xs_lo) / (r.xs_hi - r.xs_lo);
            }
            else
            {
                xs = last ? r.xs_lo : r.xs_hi - double(q) * r.step;
                xr = (xc + 0.5 * dr) - dr * (r.xs_hi - xs) / (r.xs_hi - r.xs_lo);
            }
            try
            {
                cb.entries.push_back(design_codeword({z_f, xs}, {zr, xr}, sigma, scene.tx, scene.wavelength));
            }
            catch (const InfeasibleDesign &)
            {
                ++skipped;
            }
        }
        if (cb.entries.empty())
            throw GenerationError("fs1c_generate: no realizable codeword at this depth");

        cb.record = {{"sigma", double(sigma)},
                     {"z_f", z_f},
                     {"dxs_nominal", dxs},
                     {"dxs_effective", r.step},
                     {"xs_min", r.xs_lo},
                     {"xs_max", r.xs_hi},
                     {"levels", double(r.count)},
                     {"skipped_infeasible", double(skipped)}};
        return cb;
    }

    Codebook hfac_generate(const Scene &scene, const HfacOptions &o)
    {
        if (!(o.s_a > 0.0 && o.s_r > 0.0 && o.s_theta > 0.0))
            throw DomainError("hfac_generate: sampling intervals must be positive");
        const double zr = scene.rx_depth();
        const double xc = scene.rx.center_x, half = 0.5 * scene.rx.aperture();

        double b_max = o.curvature_max;
        if (b_max <= 0.0)
        {
            const double zp = std::min(o.z_min, zr);
            const Point target{zr, xc + half};
            const Point wp{zp, xs_max(zp, zr, target.x, scene.tx.aperture())};
            b_max = std::abs(solve_params(wp, target, +1, beam_waist(scene.tx), scene.wavelength).B);
        }
        const double f_lo = o.focal_lo > 0.0 ? o.focal_lo : o.z_min / zr;
        const double f_hi = o.focal_hi;
        if (!(f_hi >= f_lo && f_lo > 0.0))
            throw DomainError("hfac_generate: focal range must satisfy 0 < lo <= hi");
        const double th_lo = std::atan((xc - half) / zr);
        const double th_hi = std::atan((xc + half) / zr);

        const std::size_t n_a = level_count(1.0, o.s_a);
        const std::size_t n_r = level_count(f_hi - f_lo, o.s_r);
        const std::size_t n_t = level_count(th_hi - th_lo, o.s_theta);

        std::vector<double> curv;
        for (std::size_t i = n_a - 1; i >= 1; --i)
            curv.push_back(-double(i) * o.s_a);
        for (std::size_t i = 0; i < n_a; ++i)
            curv.push_back(double(i) * o.s_a);

        Codebook cb;
        cb.kind = CodebookKind::hfac;
        cb.entries.reserve(curv.size() * n_r * n_t);
        for (double a : curv)
            for (std::size_t ir = 0; ir < n_r; ++ir)
                for (std::size_t it = 0; it < n_t; ++it)
                {
                    AiryParams p;
                    p.B = a * b_max;
                    p.F = (f_lo + double(ir) * o.s_r) * zr;
                    p.theta = th_lo + double(it) * o.s_theta;
                    p.sigma = a < 0.0 ? -1 : +1;
                    cb.entries.push_back(phase_vector(p, scene.tx, scene.wavelength));
                }

        cb.record = {{"s_a", o.s_a},
                     {"s_r", o.s_r},
                     {"s_theta", o.s_theta},
                     {"curvature_max", b_max},
                     {"curvature_levels", double(curv.size())},
                     {"focal_lo", f_lo},
                     {"focal_hi", f_hi},
                     {"focal_levels", double(n_r)},
                     {"theta_lo", th_lo},
                     {"theta_hi", th_hi},
                     {"theta_levels", double(n_t)}};
        return cb;
    }

    Codebook focusing_codebook(const Scene &scene)
    {
        Codebook cb;
        cb.kind = CodebookKind::focusing;
        cb.entries.push_back(focusing_codeword(scene.rx_center(), scene.tx, scene.wavelength));
        cb.record = {{"target_z", scene.rx_depth()}, {"target_x", scene.rx.center_x}};
        return cb;
    }

    void write_codebook_table(std::ostream &os, const Codebook &cb, const std::string &comment)
    {
        if (!comment.empty())
            os << "# " << comment << '\n';
        os << "index,kind,z_b,x_s,x_r,B,F,theta,sigma\n";
        const double nan = std::numeric_limits<double>::quiet_NaN();
        char buf[256];
        for (std::size_t i = 0; i < cb.entries.size(); ++i)
        {
            const auto &info = cb.entries[i].info;
            const double zb = info.waypoint ? info.waypoint->z : nan;
            const double xs = info.waypoint ? info.waypoint->x : nan;
            const double xr = info.target ? info.target->x : nan;
            const double B = info.params ? info.params->B : nan;
            const double F = info.params ? info.params->F : nan;
            const double th = info.params ? info.params->theta : nan;
            const int sg = info.params ? info.params->sigma : 0;
            std::snprintf(buf, sizeof buf, "%zu,%s,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%d\n", i,
                          to_string(cb.kind).c_str(), zb, xs, xr, B, F, th, sg);
            os << buf;
        }
    }
}
