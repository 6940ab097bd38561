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

#ifndef AIRYTRAIN_AIRY_HPP
#define AIRYTRAIN_AIRY_HPP

#include "airytrain/geometry.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace airytrain
{
    // Airy-function argument at the first maximum; tracks the center of the main lobe
    inline constexpr double kXiPeak = -1.019;

    // Below this |B| [1/m] the 1/B^3 terms are treated as singular
    inline constexpr double kMinCurvature = 1e-6;

    struct AiryParams
    {
        double B = 0.0;     // cubic (bending) coefficient [1/m]
        double F = 0.0;     // focal length [m]
        double theta = 0.0; // steering angle [rad]
        int sigma = +1;     // bending sign
    };

    struct BeamDesign
    {
        Point waypoint;
        Point target;
        AiryParams params;
    };

    enum class BeamOrigin
    {
        airy,     // closed-form design through a waypoint
        focusing, // spherical-phase conjugation at a target point
        grid      // parameter-grid baseline, no geometric design
    };

    struct CodewordInfo
    {
        BeamOrigin origin = BeamOrigin::airy;
        std::optional<Point> waypoint;
        std::optional<Point> target;
        std::optional<AiryParams> params;
    };

    // Phase-only transmit weights; every entry has magnitude 1/sqrt(N_t)
    struct Codeword
    {
        std::vector<std::complex<double>> weights;
        CodewordInfo info;

        std::size_t size() const { return weights.size(); }
        double power() const;
    };

    // Gaussian waist of the illumination, half the Tx aperture
    inline double beam_waist(const ArrayGeometry &tx) { return 0.5 * tx.aperture(); }

    // Cubic + focusing + steering phase at transverse coordinate x0 [rad, unwrapped]
    double airy_phase(double x0, const AiryParams &p, double wavelength);

    // Analytic main-lobe trajectory x(z) for the Airy beam with parameters p
    double trajectory(double z, const AiryParams &p, double waist, double wavelength, double xi = kXiPeak);

    // Closed-form {B, F, theta} whose trajectory passes through waypoint and target.
    // Throws DegenerateGeometry, InfeasibleDesign (arcsin out of range), or SingularityError (|B| < 1e-6).
    AiryParams solve_params(Point waypoint, Point target, int sigma, double waist, double wavelength);

    // Maps parameters onto the Tx array: w_n = exp(-j * airy_phase(x_n)) / sqrt(N_t).
    // The negative exponent pairs with the exp(-j 2 pi r / lambda) propagation kernel so that
    // the radiated main lobe follows trajectory().
    Codeword phase_vector(const AiryParams &p, const ArrayGeometry &tx, double wavelength);

    // Full design operator: solve_params + phase_vector, with the design recorded in the metadata.
    // Near-singular designs fall back to focusing_codeword at the same target.
    Codeword design_codeword(Point waypoint, Point target, int sigma, const ArrayGeometry &tx, double wavelength);

    // w_n = exp(+j 2 pi r_n / lambda) / sqrt(N_t), r_n the distance from element n to the target
    Codeword focusing_codeword(Point target, const ArrayGeometry &tx, double wavelength);
}

#endif
