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

#ifndef AIRYTRAIN_TESTS_FIXTURES_HPP
#define AIRYTRAIN_TESTS_FIXTURES_HPP

#include "airytrain/geometry.hpp"

#include <random>

namespace fixtures
{
    // 140 GHz, 512 x 256 elements at half a wavelength, Rx centered 3 m away
    inline airytrain::Scene reference_scene()
    {
        return airytrain::make_scene(140e9, 512, 256, 3.0, 0.0);
    }

    inline airytrain::Scene blocked_scene(double height = 0.135, double depth = 1.5, double center = 0.0)
    {
        auto s = reference_scene();
        s.blockages.push_back(airytrain::Blockage::centered(depth, center, height));
        return s;
    }

    inline double uniform(std::mt19937_64 &g, double lo, double hi)
    {
        return lo + (hi - lo) * (double(g() >> 11) * 0x1.0p-53);
    }

    inline constexpr double kWavelength = 2.1413747e-3; // c / 140 GHz, rounded
}

#endif
