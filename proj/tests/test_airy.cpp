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
#include "airytrain/channel.hpp"
#include "airytrain/errors.hpp"
#include "airytrain/feasibility.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace airytrain;
using std::numbers::pi;

TEST_CASE("airy phase")
{
    const double lam = fixtures::kWavelength;
    CHECK(airy_phase(0.0, {50.0, 2.0, 0.01, 1}, lam) == 0.0);
    // term-by-term scalar evaluation
    CHECK(airy_phase(0.1, {50.0, 2.0, 0.01, 1}, lam) == doctest::Approx(10325.1559683952).epsilon(1e-12));
    const double x0 = 0.07;
    CHECK(airy_phase(x0, {0.0, 1.3, 0.0, 1}, lam) == doctest::Approx(-pi * x0 * x0 / (lam * 1.3)));
    CHECK_THROWS_AS(airy_phase(0.1, {1.0, 0.0, 0.0, 1}, lam), DomainError);
}

TEST_CASE("closed-form design at the reference scale")
{
    const auto s = fixtures::reference_scene();
    const double w = beam_waist(s.tx);
    const auto p = solve_params({1.5, 0.114}, {3.0, 0.0}, +1, w, s.wavelength);
    // independent evaluation of the closed forms
    CHECK(p.B == doctest::Approx(2.78605792015769).epsilon(1e-9));
    CHECK(p.F == doctest::Approx(0.749817692436085).epsilon(1e-9));
    CHECK(p.theta == doctest::Approx(-0.131120177672579).epsilon(1e-9));
    CHECK(p.B > 0.0);
    CHECK(std::abs(trajectory(1.5, p, w, s.wavelength) - 0.114) <= 3e-9);
    CHECK(std::abs(trajectory(3.0, p, w, s.wavelength) - 0.0) <= 3e-9);

    SUBCASE("straight-line waypoint keeps a positive residual curvature")
    {
        const auto q = solve_params({1.5, 0.05}, {3.0, 0.1}, +1, w, s.wavelength);
        CHECK(q.B > 0.0);
        const double v = 1.0 / 1.5 - 1.0 / 3.0;
        const double lpi2 = s.wavelength * pi * pi;
        const double b3 = std::sqrt(2.0 / std::pow(2.0 * pi * w, 6) + 3.0 * v * v / (128.0 * lpi2 * lpi2 * w * w));
        CHECK(q.B * q.B * q.B == doctest::Approx(b3).epsilon(1e-12));
    }
}

TEST_CASE("design errors")
{
    const auto s = fixtures::reference_scene();
    const double w = beam_waist(s.tx);
    CHECK_THROWS_AS(solve_params({3.0, 0.0}, {3.0, 0.1}, +1, w, s.wavelength), DegenerateGeometry);
    CHECK_THROWS_AS(solve_params({1.0, 0.0}, {3.0, 0.1}, 0, w, s.wavelength), DomainError);
    CHECK_THROWS_AS(solve_params({4.0, 0.0}, {3.0, 0.1}, +1, w, s.wavelength), DomainError);
    // a waypoint far outside any realizable steering angle
    CHECK_THROWS_AS(solve_params({0.01, 5.0}, {3.0, 0.0}, +1, w, s.wavelength), InfeasibleDesign);
    CHECK_THROWS_AS(trajectory(1.0, {0.0, 1.0, 0.0, 1}, w, s.wavelength), SingularityError);
    CHECK_THROWS_AS(trajectory(0.0, {1.0, 1.0, 0.0, 1}, w, s.wavelength), DomainError);
}

TEST_CASE("pass-through and odd symmetry on random designs")
{
    const auto s = fixtures::reference_scene();
    const double w = beam_waist(s.tx), zr = 3.0;
    const Interval rx = s.rx.extent();
    std::mt19937_64 g(3);
    int checked = 0;
    while (checked < 300)
    {
        const double zb = fixtures::uniform(g, 0.5, 2.5);
        const auto los = los_cross_section(s, zb);
        const Point wp{zb, fixtures::uniform(g, los.lo, los.hi)};
        const Point tg{zr, fixtures::uniform(g, rx.lo, rx.hi)};
        const int sigma = (g() & 1) ? 1 : -1;
        if (!waypoint_feasible(wp, tg, sigma, s.tx.aperture()))
            continue;
        AiryParams p;
        try
        {
            p = solve_params(wp, tg, sigma, w, s.wavelength);
        }
        catch (const InfeasibleDesign &)
        {
            continue;
        }
        ++checked;
        CHECK(std::abs(trajectory(zb, p, w, s.wavelength) - wp.x) <= 1e-9 * zr);
        CHECK(std::abs(trajectory(zr, p, w, s.wavelength) - tg.x) <= 1e-9 * zr);
        CHECK(std::abs(p.theta) < pi / 2);
        CHECK(p.sigma == sigma);

        const auto m = solve_params({zb, -wp.x}, {zr, -tg.x}, -sigma, w, s.wavelength);
        CHECK(m.B == doctest::Approx(-p.B).epsilon(1e-10));
        CHECK(m.theta == doctest::Approx(-p.theta).epsilon(1e-10));
        CHECK(m.F == doctest::Approx(p.F).epsilon(1e-10));
        for (double z : {0.3, 1.0, 2.2, 2.9})
            CHECK(trajectory(z, m, w, s.wavelength) ==
                  doctest::Approx(-trajectory(z, p, w, s.wavelength)).epsilon(1e-9).scale(1e-3));
    }
}

TEST_CASE("phase vector")
{
    const auto s = fixtures::reference_scene();
    SUBCASE("flat phase gives uniform weights")
    {
        const auto cw = phase_vector({0.0, INFINITY, 0.0, 1}, s.tx, s.wavelength);
        for (const auto &x : cw.weights)
        {
            CHECK(x.real() == doctest::Approx(1.0 / std::sqrt(512.0)));
            CHECK(std::abs(x.imag()) < 1e-15);
        }
    }
    SUBCASE("unit modulus and unit power")
    {
        const auto cw = design_codeword({1.5, 0.114}, {3.0, 0.0}, +1, s.tx, s.wavelength);
        REQUIRE(cw.size() == 512);
        CHECK(cw.info.origin == BeamOrigin::airy);
        for (const auto &x : cw.weights)
            CHECK(std::abs(x) == doctest::Approx(1.0 / std::sqrt(512.0)).epsilon(1e-14));
        CHECK(cw.power() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("weights carry the negated phase")
    {
        const AiryParams p{3.0, 0.8, -0.1, 1};
        const auto cw = phase_vector(p, s.tx, s.wavelength);
        const auto pos = element_positions(s.tx);
        for (std::size_t n : {0u, 100u, 511u})
            CHECK(std::arg(cw.weights[n] * std::polar(1.0, airy_phase(pos[n].x, p, s.wavelength))) ==
                  doctest::Approx(0.0).scale(1.0));
    }
}

TEST_CASE("focusing codeword")
{
    const auto s = fixtures::reference_scene();
    const auto pos = element_positions(s.tx);

    SUBCASE("centre-to-edge phase difference")
    {
        const auto cw = focusing_codeword({3.0, 0.0}, s.tx, s.wavelength);
        const double r_edge = std::hypot(3.0, pos[0].x), r_mid = std::hypot(3.0, pos[256].x);
        const double expected = std::remainder(2 * pi * (r_edge - r_mid) / s.wavelength, 2 * pi);
        CHECK(std::remainder(std::arg(cw.weights[0]) - std::arg(cw.weights[256]) - expected, 2 * pi) ==
              doctest::Approx(0.0).scale(1.0));
    }
    SUBCASE("far-field limit is a linear phase ramp")
    {
        // deviation of the element-to-element phase step from the plane-wave step, 0.01 rad off boresight
        auto deviation = [&](double r)
        {
            const Point t{r * std::cos(0.01), r * std::sin(0.01)};
            const auto cw = focusing_codeword(t, s.tx, s.wavelength);
            const double k = 2 * pi / s.wavelength;
            double worst = 0.0;
            for (std::size_t n = 1; n < pos.size(); ++n)
            {
                const double step = std::arg(cw.weights[n] / cw.weights[n - 1]);
                worst = std::max(worst, std::abs(std::remainder(step + k * std::sin(0.01) * (pos[n].x - pos[n - 1].x), 2 * pi)));
            }
            return worst;
        };
        const double d10 = deviation(10.0), d100 = deviation(100.0), d1000 = deviation(1000.0);
        CHECK(d100 < d10 / 5);
        CHECK(d1000 < d100 / 5);
        // what remains is the 1/r curvature term k d (D_t/2) / r at the array edge
        CHECK(d1000 == doctest::Approx(pi * 0.5 * s.tx.aperture() / 1000.0).epsilon(0.02));
    }
    SUBCASE("own target beats Airy beams aimed elsewhere")
    {
        const Point target{3.0, 0.05};
        const Scene one = [&]
        {
            Scene t = s;
            t.rx = {1, 1.0, target.x, target.z};
            return t;
        }();
        const auto H = channel_matrix(one);
        const double own = received_power(H, focusing_codeword(target, s.tx, s.wavelength));
        for (double xr : {-0.12, -0.05, 0.0, 0.1})
            for (double xs : {-0.05, 0.0, 0.05})
            {
                const auto cw = design_codeword({1.2, xs}, {3.0, xr}, +1, s.tx, s.wavelength);
                CHECK(received_power(H, cw) <= own);
            }
    }
}
