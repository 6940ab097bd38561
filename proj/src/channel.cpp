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

#include "airytrain/channel.hpp"
#include "airytrain/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <ostream>

namespace airytrain
{
    using std::numbers::pi;

    namespace
    {
        struct Fnv1a
        {
            std::uint64_t h = 0xcbf29ce484222325ull;
            void add(std::uint64_t v)
            {
                for (int i = 0; i < 8; ++i)
                {
                    h ^= (v >> (8 * i)) & 0xffu;
                    h *= 0x100000001b3ull;
                }
            }
            void add(double v) { add(std::bit_cast<std::uint64_t>(v)); }
        };

        // Contribution of a unit weight at src to the field at dst, or 0 when occluded
        std::complex<double> kernel(const Scene &scene, Point src, Point dst, double k)
        {
            if (!ray_clear(scene, src, dst))
                return {0.0, 0.0};
            const double r = std::hypot(dst.z - src.z, dst.x - src.x);
            return std::polar(scene.wavelength / (4.0 * pi * r), -k * r);
        }
    }

    std::uint64_t scene_fingerprint(const Scene &scene)
    {
        Fnv1a f;
        f.add(scene.wavelength);
        for (const auto *a : {&scene.tx, &scene.rx})
        {
            f.add(std::uint64_t(a->num_elements));
            f.add(a->spacing);
            f.add(a->center_x);
            f.add(a->depth_z);
        }
        f.add(std::uint64_t(scene.blockages.size()));
        for (const auto &b : scene.blockages)
        {
            f.add(b.depth);
            f.add(b.x_lo);
            f.add(b.x_hi);
        }
        return f.h;
    }

    ChannelMatrix channel_matrix(const Scene &scene)
    {
        scene.validate();
        const auto tx = element_positions(scene.tx);
        const auto rx = element_positions(scene.rx);
        const double k = 2.0 * pi / scene.wavelength;

        ChannelMatrix H;
        H.entries.resize(Eigen::Index(rx.size()), Eigen::Index(tx.size()));
        for (std::size_t n = 0; n < tx.size(); ++n)
            for (std::size_t m = 0; m < rx.size(); ++m)
                H.entries(Eigen::Index(m), Eigen::Index(n)) = kernel(scene, tx[n], rx[m], k);
        H.scene_fingerprint = scene_fingerprint(scene);
        return H;
    }

    Eigen::MatrixXcd stack_codewords(std::span<const Codeword> codewords)
    {
        if (codewords.empty())
            return {};
        const auto n = Eigen::Index(codewords.front().size());
        Eigen::MatrixXcd W(n, Eigen::Index(codewords.size()));
        for (std::size_t k = 0; k < codewords.size(); ++k)
        {
            if (Eigen::Index(codewords[k].size()) != n)
                throw DomainError("stack_codewords: codeword lengths differ");
            W.col(Eigen::Index(k)) = Eigen::Map<const Eigen::VectorXcd>(codewords[k].weights.data(), n);
        }
        return W;
    }

    double received_power(const ChannelMatrix &H, const Codeword &f)
    {
        if (f.size() != H.tx_count())
            throw DomainError("received_power: codeword length does not match the Tx array");
        const Eigen::Map<const Eigen::VectorXcd> w(f.weights.data(), Eigen::Index(f.size()));
        return (H.entries * w).squaredNorm();
    }

    std::vector<double> received_powers(const ChannelMatrix &H, const Eigen::MatrixXcd &codewords)
    {
        if (codewords.cols() == 0)
            return {};
        if (std::size_t(codewords.rows()) != H.tx_count())
            throw DomainError("received_powers: codeword length does not match the Tx array");
        const Eigen::MatrixXcd Y = H.entries * codewords;
        std::vector<double> out(std::size_t(Y.cols()));
        for (Eigen::Index k = 0; k < Y.cols(); ++k)
            out[std::size_t(k)] = Y.col(k).squaredNorm();
        return out;
    }

    double spectral_efficiency(double power, const LinkBudget &budget)
    {
        return std::log2(1.0 + budget.rho * power);
    }

    double largest_singular_value(const ChannelMatrix &H)
    {
        if (H.entries.size() == 0)
            return 0.0;
        // Gram matrix on the smaller side
        const Eigen::MatrixXcd G = H.entries.rows() <= H.entries.cols()
                                       ? Eigen::MatrixXcd(H.entries * H.entries.adjoint())
                                       : Eigen::MatrixXcd(H.entries.adjoint() * H.entries);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw SolverError("largest_singular_value: eigen decomposition failed");
        return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
    }

    double digital_upper_bound(const ChannelMatrix &H, const LinkBudget &budget)
    {
        const double s = largest_singular_value(H);
        return spectral_efficiency(s * s, budget);
    }

    LinkBudget calibrate_snr(const ChannelMatrix &unblocked, double target_se)
    {
        const double s = largest_singular_value(unblocked);
        if (!(s > 0.0))
            throw DomainError("calibrate_snr: channel has no energy");
        return {(std::exp2(target_se) - 1.0) / (s * s)};
    }

    LinkBudget calibrate_snr(const Scene &unblocked, double target_se)
    {
        return calibrate_snr(channel_matrix(unblocked.without_blockages()), target_se);
    }

    FieldGrid FieldGrid::uniform(double z_lo, double z_hi, std::size_t nz, double x_lo, double x_hi, std::size_t nx)
    {
        auto lin = [](double a, double b, std::size_t n)
        {
            std::vector<double> v(n);
            for (std::size_t i = 0; i < n; ++i)
                v[i] = n == 1 ? a : a + (b - a) * double(i) / double(n - 1);
            return v;
        };
        return {lin(z_lo, z_hi, nz), lin(x_lo, x_hi, nx)};
    }

    double FieldMap::peak() const
    {
        return intensity.empty() ? 0.0 : *std::max_element(intensity.begin(), intensity.end());
    }

    double FieldMap::argmax_x(std::size_t iz) const
    {
        const std::size_t nx = grid.x.size();
        const auto row = intensity.begin() + std::ptrdiff_t(iz * nx);
        return grid.x[std::size_t(std::max_element(row, row + std::ptrdiff_t(nx)) - row)];
    }

    FieldMap field_map(const Codeword &f, const FieldGrid &grid, const Scene &scene)
    {
        scene.validate();
        const auto tx = element_positions(scene.tx);
        if (f.size() != tx.size())
            throw DomainError("field_map: codeword length does not match the Tx array");
        for (double z : grid.z)
            if (!(z > 0.0))
                throw DomainError("field_map: grid depths must be positive");

        const double k = 2.0 * pi / scene.wavelength;
        FieldMap map{grid, std::vector<double>(grid.z.size() * grid.x.size())};
        for (std::size_t iz = 0; iz < grid.z.size(); ++iz)
            for (std::size_t ix = 0; ix < grid.x.size(); ++ix)
            {
                const Point p{grid.z[iz], grid.x[ix]};
                std::complex<double> acc{0.0, 0.0};
                for (std::size_t n = 0; n < tx.size(); ++n)
                    acc += f.weights[n] * kernel(scene, tx[n], p, k);
                map.intensity[iz * grid.x.size() + ix] = std::norm(acc);
            }
        return map;
    }

    void write_field_csv(std::ostream &os, const FieldMap &map, const std::string &comment)
    {
        const double peak = map.peak();
        if (!comment.empty())
            os << "# " << comment << '\n';
        os << "z,x,intensity,intensity_dB\n";
        char buf[160];
        for (std::size_t iz = 0; iz < map.grid.z.size(); ++iz)
            for (std::size_t ix = 0; ix < map.grid.x.size(); ++ix)
            {
                const double v = map.at(iz, ix);
                const double db = (v > 0.0 && peak > 0.0) ? std::max(-300.0, 10.0 * std::log10(v / peak)) : -300.0;
                std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9e,%.4f\n", map.grid.z[iz], map.grid.x[ix], v, db);
                os << buf;
            }
    }
}
