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

#include "airytrain/airy.hpp"
#include "airytrain/errors.hpp"

#include <cmath>
#include <numbers>

namespace airytrain
{
    using std::numbers::pi;

    double Codeword::power() const
    {
        double p = 0.0;
        for (const auto &w : weights)
            p += std::norm(w);
        return p;
    }

    double airy_phase(double x0, const AiryParams &p, double wavelength)
    {
        if (p.F == 0.0)
            throw DomainError("airy_phase: focal length F must be non-zero");
        const double k = 2.0 * pi * p.B;
        return (k * k * k) * (x0 * x0 * x0) / 3.0 - pi / (wavelength * p.F) * x0 * x0 -
               2.0 * pi / wavelength * std::sin(p.theta) * x0;
    }

    double trajectory(double z, const AiryParams &p, double waist, double wavelength, double xi)
    {
        if (!(z > 0.0))
            throw DomainError("trajectory: z must be positive");
        if (std::abs(p.B) < kMinCurvature)
            throw SingularityError("trajectory: |B| below singular threshold");
        const double s_r = 1.0 / z - 1.0 / p.F;
        const double s_i = wavelength / (pi * waist * waist);
        const double b3 = p.B * p.B * p.B;
        return -xi * wavelength * z * p.B - std::sin(p.theta) * z -
               (s_r * s_r - s_i * s_i) / (16.0 * wavelength * pi * pi * b3) * z;
    }

    AiryParams solve_params(Point waypoint, Point target, int sigma, double waist, double wavelength)
    {
        const double zb = waypoint.z, xs = waypoint.x;
        const double zr = target.z, xr = target.x;
        if (sigma != 1 && sigma != -1)
            throw DomainError("solve_params: sigma must be +1 or -1");
        if (zb == zr)
            throw DegenerateGeometry("solve_params: waypoint depth equals target depth");
        if (!(zb > 0.0 && zb < zr))
            throw DomainError("solve_params: need 0 < z_b < z_r");

        const double w2 = waist * waist;
        const double lpi2 = wavelength * pi * pi;
        const double slope = xr / zr - xs / zb;
        const double inv = 1.0 / zr - 1.0 / zb;

        // bending coefficient
        const double lead = 3.0 * slope / (16.0 * lpi2 * w2);
        const double two_pi_w = 2.0 * pi * waist;
        const double w6 = std::pow(two_pi_w, 6);
        const double radicand = lead * lead + 2.0 / w6 + 3.0 * inv * inv / (128.0 * lpi2 * lpi2 * w2);
        const double b3 = -lead + double(sigma) * std::sqrt(radicand);
        const double B = std::cbrt(b3);
        if (std::abs(B) < kMinCurvature)
            throw SingularityError("solve_params: resulting |B| below singular threshold");

        // focal length
        const double F = 1.0 / (0.5 * (1.0 / zr + 1.0 / zb) + 8.0 * lpi2 * slope / inv * b3);

        // steering
        const double s_r = 1.0 / zb - 1.0 / F;
        const double s_i = wavelength / (pi * w2);
        const double arg = -kXiPeak * wavelength * B - xs / zb - (s_r * s_r - s_i * s_i) / (16.0 * lpi2 * b3);
        if (!(arg >= -1.0 && arg <= 1.0))
            throw InfeasibleDesign("solve_params: steering arcsin argument outside [-1, 1]");

        return {B, F, std::asin(arg), sigma};
    }

    Codeword phase_vector(const AiryParams &p, const ArrayGeometry &tx, double wavelength)
    {
        if (tx.depth_z != 0.0)
            throw DomainError("phase_vector: transmit array must sit at z = 0");
        const auto pos = element_positions(tx);
        const double amp = 1.0 / std::sqrt(double(pos.size()));
        Codeword cw;
        cw.weights.resize(pos.size());
        for (std::size_t n = 0; n < pos.size(); ++n)
            cw.weights[n] = std::polar(amp, -airy_phase(pos[n].x, p, wavelength));
        cw.info.origin = BeamOrigin::grid;
        cw.info.params = p;
        return cw;
    }

    Codeword design_codeword(Point waypoint, Point target, int sigma, const ArrayGeometry &tx, double wavelength)
    {
        try
        {
            const AiryParams p = solve_params(waypoint, target, sigma, beam_waist(tx), wavelength);
            Codeword cw = phase_vector(p, tx, wavelength);
            cw.info = {BeamOrigin::airy, waypoint, target, p};
            return cw;
        }
        catch (const SingularityError &)
        {
            Codeword cw = focusing_codeword(target, tx, wavelength);
            cw.info.waypoint = waypoint;
            return cw;
        }
    }

    Codeword focusing_codeword(Point target, const ArrayGeometry &tx, double wavelength)
    {
        if (!(target.z > 0.0))
            throw DomainError("focusing_codeword: target must lie in front of the array");
        const auto pos = element_positions(tx);
        const double amp = 1.0 / std::sqrt(double(pos.size()));
        const double k = 2.0 * pi / wavelength;
        Codeword cw;
        cw.weights.resize(pos.size());
        for (std::size_t n = 0; n < pos.size(); ++n)
        {
            const double r = std::hypot(target.z - pos[n].z, target.x - pos[n].x);
            cw.weights[n] = std::polar(amp, k * r);
        }
        cw.info.origin = BeamOrigin::focusing;
        cw.info.target = target;
        return cw;
    }
}
