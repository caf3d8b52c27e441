// SPDX-License-Identifier: Apache-2.0
//
// mmee: load-adaptive massive MIMO energy-efficiency simulator
// Copyright (C) 2026 The mmee authors
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

#pragma once

#include <cstddef>
#include <string>

#include <nlohmann/json.hpp>

#include "mmee/dimensioning.hpp"
#include "mmee/geometry.hpp"
#include "mmee/params.hpp"

namespace mmee
{

// Everything a run needs besides the load profile and the command-line switches.
struct SimulationConfig
{
    SystemParams params;
    std::size_t num_cells = 19;
    double cell_radius_m = 500.0;
    double min_distance_m = 35.0;
    std::size_t grid_size = 15000;
    PathLoss path_loss = default_path_loss();
    DimensioningConfig dimensioning;
    double per_user_bits = 1e8;
    double target_blocking = 0.02;
    int max_sweeps = 1000;

    void validate() const;
};

SimulationConfig default_config(PaKind kind = PaKind::kTpa);

// Overrides the fields present in `j`. Unknown keys are rejected with std::invalid_argument.
void apply_config(SimulationConfig &config, const nlohmann::json &j);

SimulationConfig load_config(const std::string &path, SimulationConfig base);

nlohmann::json to_json(const SimulationConfig &config);

} // namespace mmee
