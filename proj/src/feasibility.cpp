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

#include "airytrain/feasibility.hpp"
#include "airytrain/errors.hpp"

#include <cmath>
#include <numbers>

namespace airytrain
{
    using std::numbers::pi;

    GeometricRatios geometric_ratios(Point waypoint, Point target)
    {
        const double v = 1.0 / waypoint.z - 1.0 / target.z;
        if (v == 0.0)
            throw DegenerateGeometry("geometric_ratios: waypoint depth equals target depth");
        const double u = waypoint.x / waypoint.z - target.x / target.z;
        return {u, v, u / v};
    }

    double tangent_intercept(double z, const AiryParams &p, double wavelength)
    {
        if (!(z > 0.0))
            throw DomainError("tangent_intercept: z must be positive");
        if (p.F == 0.0)
            throw DomainError("tangent_intercept: F must be non-zero");
        if (std::abs(p.B) < kMinCurvature)
            throw SingularityError("tangent_intercept: |B| below singular threshold");
        return (1.0 / p.F - 1.0 / z) / (8.0 * wavelength * pi * pi * p.B * p.B * p.B);
    }

    double intercept_at_receiver(Point waypoint, Point target, double B, double wavelength)
    {
        if (std::abs(B) < kMinCurvature)
            throw SingularityError("intercept_at_receiver: |B| below singular threshold");
        const auto g = geometric_ratios(waypoint, target);
        return g.X + g.v / (16.0 * wavelength * pi * pi * B * B * B);
    }

    double curvature_factor(double X, double wavelength, double waist)
    {
        const double lead = 3.0 * X / (16.0 * wavelength * pi * pi * waist * waist);
        const double c = 3.0 / (128.0 * wavelength * wavelength * std::pow(pi, 4) * waist * waist);
        return lead + std::sqrt(lead * lead + c);
    }

    double critical_ratio(double aperture)
    {
        if (!(aperture > 0.0))
            throw DomainError("critical_ratio: aperture must be positive");
        return 5.0 * aperture / 12.0;
    }

    BoundaryRoot solve_scalar_boundary(double aperture, double wavelength, double waist, double tol)
    {
        if (!(aperture > 0.0))
            throw DomainError("solve_scalar_boundary: aperture must be positive");
        auto f = [&](double X)
        { return X + 1.0 / (16.0 * wavelength * pi * pi * curvature_factor(X, wavelength, waist)) - 0.5 * aperture; };

        double lo = 0.0, hi = 0.5 * aperture;
        double f_lo = f(lo), f_hi = f(hi);
        if (f_lo == 0.0)
            return {lo, 0.0, 0};
        if (f_hi == 0.0)
            return {hi, 0.0, 0};
        if ((f_lo < 0.0) == (f_hi < 0.0))
            throw SolverError("solve_scalar_boundary: no sign change on [0, D_t/2]");

        int it = 0;
        while (hi - lo > tol && it < 200)
        {
            const double mid = 0.5 * (lo + hi);
            const double f_mid = f(mid);
            if ((f_mid < 0.0) == (f_lo < 0.0))
                lo = mid, f_lo = f_mid;
            else
                hi = mid;
            ++it;
        }
        const double root = 0.5 * (lo + hi);
        return {root, f(root), it};
    }

    double xs_max(double z_b, double z_r, double x_r, double aperture)
    {
        const double a = z_b / z_r;
        return 5.0 * aperture / 12.0 * (1.0 - a) + x_r * a;
    }

    double xs_min(double z_b, double z_r, double x_r, double aperture)
    {
        const double a = z_b / z_r;
        return -5.0 * aperture / 12.0 * (1.0 - a) + x_r * a;
    }

    bool waypoint_feasible(Point waypoint, Point target, int sigma, double aperture)
    {
        if (sigma > 0)
            return waypoint.x <= xs_max(waypoint.z, target.z, target.x, aperture) + kBoundarySlack;
        return waypoint.x >= xs_min(waypoint.z, target.z, target.x, aperture) - kBoundarySlack;
    }

    bool intercept_feasible(Point waypoint, Point target, int sigma, double aperture, double wavelength, double waist)
    {
        // full closed-form B^3, constant term included
        const auto g = geometric_ratios(waypoint, target);
        const double w2 = waist * waist;
        const double lpi2 = wavelength * pi * pi;
        const double lead = 3.0 * g.u / (16.0 * lpi2 * w2);
        const double radicand = lead * lead + 2.0 / std::pow(2.0 * pi * waist, 6) +
                                3.0 * g.v * g.v / (128.0 * lpi2 * lpi2 * w2);
        const double b3 = lead + double(sigma) * std::sqrt(radicand);
        if (std::abs(b3) < std::pow(kMinCurvature, 3))
            return false;
        const double x_int = g.X + g.v / (16.0 * lpi2 * b3);
        return std::abs(x_int) <= 0.5 * aperture + kBoundarySlack;
    }
}
