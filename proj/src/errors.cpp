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

#include "airytrain/errors.hpp"

namespace airytrain
{
    std::string error_kind(const std::exception &e)
    {
        // Most derived first
        if (dynamic_cast<const DegenerateGeometry *>(&e)) return "DegenerateGeometry";
        if (dynamic_cast<const SingularityError *>(&e)) return "SingularityError";
        if (dynamic_cast<const DomainError *>(&e)) return "DomainError";
        if (dynamic_cast<const InfeasibleDesign *>(&e)) return "InfeasibleDesign";
        if (dynamic_cast<const SolverError *>(&e)) return "SolverError";
        if (dynamic_cast<const GenerationError *>(&e)) return "GenerationError";
        if (dynamic_cast<const ConfigError *>(&e)) return "ConfigError";
        return "InternalError";
    }
}
