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

#ifndef AIRYTRAIN_GEOMETRY_HPP
#define AIRYTRAIN_GEOMETRY_HPP

#include <cstddef>
#include <vector>

namespace airytrain
{
    inline constexpr double kSpeedOfLight = 299792458.0; // [m/s]

    // A point in the 2D propagation plane. z is the propagation axis, x the transverse axis. [m]
    struct Point
    {
        double z = 0.0;
        double x = 0.0;
    };

    struct Interval
    {
        double lo = 0.0;
        double hi = 0.0;
        double width() const { return hi - lo; }
        double center() const { return 0.5 * (lo + hi); }
        bool contains(double x, double slack = 0.0) const { return x >= lo - slack && x <= hi + slack; }
    };

    // Uniform linear array along x, placed at depth depth_z and centered at center_x
    struct ArrayGeometry
    {
        std::size_t num_elements = 1;
        double spacing = 0.0; // [m]
        double center_x = 0.0;
        double depth_z = 0.0;

        double aperture() const { return double(num_elements - 1) * spacing; }
        Interval extent() const { return {center_x - 0.5 * aperture(), center_x + 0.5 * aperture()}; }
        void validate() const;
    };

    // Zero-thickness occluder covering the closed interval [x_lo, x_hi] at a single depth
    struct Blockage
    {
        double depth = 0.0;
        double x_lo = 0.0;
        double x_hi = 0.0;

        double height() const { return x_hi - x_lo; }
        static Blockage centered(double depth, double center_x, double height)
        {
            return {depth, center_x - 0.5 * height, center_x + 0.5 * height};
        }
    };

    struct Scene
    {
        double wavelength = 0.0;
        ArrayGeometry tx;
        ArrayGeometry rx;
        std::vector<Blockage> blockages;

        double rx_depth() const { return rx.depth_z; }
        Point rx_center() const { return {rx.depth_z, rx.center_x}; }
        Scene without_blockages() const;
        void validate() const;
    };

    // Scene with two ULAs at half-wavelength spacing; Tx centered at the origin
    Scene make_scene(double carrier_hz, std::size_t tx_elements, std::size_t rx_elements,
                     double rx_depth, double rx_center_x, double spacing_wavelengths = 0.5);

    // Reflection x -> -x of every coordinate in the scene
    Scene mirrored(const Scene &scene);

    std::vector<Point> element_positions(const ArrayGeometry &geom);

    // Transverse extent of the LoS region (convex hull of the two apertures) at depth z
    Interval los_cross_section(const Scene &scene, double z);

    // True iff the segment p0-p1 crosses the blockage plane strictly between its endpoints
    // and hits the closed interval [x_lo, x_hi] there
    bool ray_blocked(const Blockage &blockage, Point p0, Point p1);

    // True iff no blockage of the scene occludes the segment
    bool ray_clear(const Scene &scene, Point p0, Point p1);

    // Blockage height relative to the LoS half-width at its depth, clamped to 1
    double blockage_ratio(const Scene &scene, const Blockage &blockage);
}

#endif
