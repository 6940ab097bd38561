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

#ifndef AIRYTRAIN_CHANNEL_HPP
#define AIRYTRAIN_CHANNEL_HPP

#include "airytrain/airy.hpp"
#include "airytrain/geometry.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace airytrain
{
    // Narrowband near-field channel: entry (m, n) links Tx element n to Rx element m
    struct ChannelMatrix
    {
        Eigen::MatrixXcd entries; // N_r x N_t
        std::uint64_t scene_fingerprint = 0;

        std::size_t rx_count() const { return std::size_t(entries.rows()); }
        std::size_t tx_count() const { return std::size_t(entries.cols()); }
    };

    struct LinkBudget
    {
        double rho = 1.0; // transmit SNR, linear
    };

    // Order-sensitive FNV-1a hash over every scalar describing the scene
    std::uint64_t scene_fingerprint(const Scene &scene);

    // h_mn = lambda / (4 pi r) * exp(-j 2 pi r / lambda) when the ray is clear, 0 otherwise
    ChannelMatrix channel_matrix(const Scene &scene);

    // ||H f||^2 with matched receive combining
    double received_power(const ChannelMatrix &H, const Codeword &f);

    // Received power for every column of a stacked codeword matrix (N_t x K)
    std::vector<double> received_powers(const ChannelMatrix &H, const Eigen::MatrixXcd &codewords);

    Eigen::MatrixXcd stack_codewords(std::span<const Codeword> codewords);

    double spectral_efficiency(double power, const LinkBudget &budget);

    // Largest singular value of H, from the top eigenvalue of H H^H
    double largest_singular_value(const ChannelMatrix &H);

    // Best rank-one precoder/combiner pair: log2(1 + rho sigma_max^2)
    double digital_upper_bound(const ChannelMatrix &H, const LinkBudget &budget);

    // rho such that the unblocked digital upper bound equals target_se
    LinkBudget calibrate_snr(const Scene &unblocked, double target_se);
    LinkBudget calibrate_snr(const ChannelMatrix &unblocked, double target_se);

    struct FieldGrid
    {
        std::vector<double> z; // [m], all > 0
        std::vector<double> x; // [m]

        static FieldGrid uniform(double z_lo, double z_hi, std::size_t nz, double x_lo, double x_hi, std::size_t nx);
    };

    struct FieldMap
    {
        FieldGrid grid;
        std::vector<double> intensity; // row-major, z index outer

        double at(std::size_t iz, std::size_t ix) const { return intensity[iz * grid.x.size() + ix]; }
        double peak() const;
        // x position of the strongest sample at depth index iz
        double argmax_x(std::size_t iz) const;
    };

    // Huygens superposition of the Tx elements with the same occlusion rule as channel_matrix
    FieldMap field_map(const Codeword &f, const FieldGrid &grid, const Scene &scene);

    // Columns z, x, intensity, intensity_dB (relative to the map peak, floored at -300 dB)
    void write_field_csv(std::ostream &os, const FieldMap &map, const std::string &comment = "");
}

#endif
