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

#include "airytrain/geometry.hpp"
#include "airytrain/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace airytrain
{
    void ArrayGeometry::validate() const
    {
        if (num_elements < 1)
            throw DomainError("ArrayGeometry: num_elements must be at least 1");
        if (!(spacing > 0.0))
            throw DomainError("ArrayGeometry: spacing must be positive");
        if (!(depth_z >= 0.0))
            throw DomainError("ArrayGeometry: depth_z must be non-negative");
    }

    Scene Scene::without_blockages() const
    {
        Scene s = *this;
        s.blockages.clear();
        return s;
    }

    void Scene::validate() const
    {
        if (!(wavelength > 0.0))
            throw DomainError("Scene: wavelength must be positive");
        tx.validate();
        rx.validate();
        if (tx.depth_z != 0.0)
            throw DomainError("Scene: transmit array must sit at z = 0");
        if (!(rx.depth_z > 0.0))
            throw DomainError("Scene: receive array must sit at z > 0");
        for (std::size_t i = 0; i < blockages.size(); ++i)
        {
            const auto &b = blockages[i];
            if (!(b.depth > 0.0 && b.depth < rx.depth_z))
                throw DomainError("Scene: blockage " + std::to_string(i) + " depth must lie strictly between the arrays");
            if (!(b.x_lo < b.x_hi))
                throw DomainError("Scene: blockage " + std::to_string(i) + " needs x_lo < x_hi");
        }
    }

    Scene make_scene(double carrier_hz, std::size_t tx_elements, std::size_t rx_elements,
                     double rx_depth, double rx_center_x, double spacing_wavelengths)
    {
        if (!(carrier_hz > 0.0))
            throw DomainError("make_scene: carrier frequency must be positive");
        Scene s;
        s.wavelength = kSpeedOfLight / carrier_hz;
        const double d = spacing_wavelengths * s.wavelength;
        s.tx = {tx_elements, d, 0.0, 0.0};
        s.rx = {rx_elements, d, rx_center_x, rx_depth};
        s.validate();
        return s;
    }

    Scene mirrored(const Scene &scene)
    {
        Scene m = scene;
        m.tx.center_x = -scene.tx.center_x;
        m.rx.center_x = -scene.rx.center_x;
        for (auto &b : m.blockages)
            b = {b.depth, -b.x_hi, -b.x_lo};
        return m;
    }

    std::vector<Point> element_positions(const ArrayGeometry &geom)
    {
        geom.validate();
        std::vector<Point> out(geom.num_elements);
        const double mid = 0.5 * double(geom.num_elements - 1);
        for (std::size_t n = 0; n < geom.num_elements; ++n)
            out[n] = {geom.depth_z, geom.center_x + (double(n) - mid) * geom.spacing};
        return out;
    }

    Interval los_cross_section(const Scene &scene, double z)
    {
        const double zr = scene.rx_depth();
        if (!(z >= 0.0 && z <= zr))
            throw DomainError("los_cross_section: z must lie in [0, z_r]");
        const Interval t = scene.tx.extent();
        const Interval r = scene.rx.extent();
        const double a = z / zr;
        return {t.lo + (r.lo - t.lo) * a, t.hi + (r.hi - t.hi) * a};
    }

    bool ray_blocked(const Blockage &blockage, Point p0, Point p1)
    {
        if (p0.z == p1.z)
            throw DomainError("ray_blocked: degenerate segment with p0.z == p1.z");
        if (p0.z > p1.z)
            std::swap(p0, p1);
        if (!(blockage.depth > p0.z && blockage.depth < p1.z))
            return false;
        const double t = (blockage.depth - p0.z) / (p1.z - p0.z);
        const double x = p0.x + t * (p1.x - p0.x);
        return x >= blockage.x_lo && x <= blockage.x_hi;
    }

    bool ray_clear(const Scene &scene, Point p0, Point p1)
    {
        return std::none_of(scene.blockages.begin(), scene.blockages.end(),
                            [&](const Blockage &b) { return ray_blocked(b, p0, p1); });
    }

    double blockage_ratio(const Scene &scene, const Blockage &blockage)
    {
        const double half_width = 0.5 * los_cross_section(scene, blockage.depth).width();
        if (!(half_width > 0.0))
            return 1.0;
        return std::clamp(blockage.height() / half_width, 0.0, 1.0);
    }
}
