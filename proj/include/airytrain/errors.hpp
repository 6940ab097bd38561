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

#ifndef AIRYTRAIN_ERRORS_HPP
#define AIRYTRAIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace airytrain
{
    // Input outside the domain of a formula (z <= 0, F = 0, wrong array depth, ...)
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Waypoint and target coincide in depth, or another zero-length geometry
    class DegenerateGeometry : public DomainError
    {
    public:
        using DomainError::DomainError;
    };

    // |B| too small for the 1/B^3 terms of the trajectory and intercept formulas
    class SingularityError : public DomainError
    {
    public:
        using DomainError::DomainError;
    };

    // The steering arcsin argument left [-1, 1]; the codeword cannot be realized
    class InfeasibleDesign : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class SolverError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Codebook construction produced no usable entries
    class GenerationError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Short machine-readable name of an exception type, used by the CLI error report
    std::string error_kind(const std::exception &e);
}

#endif
