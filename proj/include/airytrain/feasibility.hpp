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

#ifndef AIRYTRAIN_FEASIBILITY_HPP
#define AIRYTRAIN_FEASIBILITY_HPP

#include "airytrain/airy.hpp"

namespace airytrain
{
    // Slack used by every boundary comparison [m]; equality counts as feasible
    inline constexpr double kBoundarySlack = 1e-12;

    // u = x_s/z_b - x_r/z_r, v = 1/z_b - 1/z_r, X = u/v
    struct GeometricRatios
    {
        double u = 0.0;
        double v = 0.0;
        double X = 0.0;
    };

    GeometricRatios geometric_ratios(Point waypoint, Point target);

    // Where the tangent of the trajectory at depth z meets the Tx plane
    double tangent_intercept(double z, const AiryParams &p, double wavelength);

    // Tangent intercept at the receiver depth, written in terms of the geometric ratios
    double intercept_at_receiver(Point waypoint, Point target, double B, double wavelength);

    // Approximation of B^3 / v with constant terms dropped; strictly positive
    double curvature_factor(double X, double wavelength, double waist);

    // Closed-form critical ratio X* = 5 D_t / 12
    double critical_ratio(double aperture);

    struct BoundaryRoot
    {
        double root = 0.0;
        double residual = 0.0;
        int iterations = 0;
    };

    // Bisection root of X + 1/(16 lambda pi^2 M(X)) = D_t / 2 on [0, D_t / 2]
    BoundaryRoot solve_scalar_boundary(double aperture, double wavelength, double waist, double tol = 1e-12);

    // Linear waypoint bounds through (0, +-5 D_t / 12) and (z_r, x_r)
    double xs_max(double z_b, double z_r, double x_r, double aperture);
    double xs_min(double z_b, double z_r, double x_r, double aperture);

    // Production pruning test: the linear boundary for the given bending sign
    bool waypoint_feasible(Point waypoint, Point target, int sigma, double aperture);

    // Validation path: |intercept at receiver| <= D_t / 2 using the full closed-form B
    bool intercept_feasible(Point waypoint, Point target, int sigma, double aperture, double wavelength, double waist);
}

#endif
