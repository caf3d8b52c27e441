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

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmee/config.hpp"
#include "mmee/dimensioning.hpp"
#include "mmee/game.hpp"
#include "mmee/power_model.hpp"
#include "mmee/traffic.hpp"

namespace mmee
{

inline constexpr const char *kArtifactVersion = "mmee-1.0.0";

struct RunConfig
{
    SimulationConfig sim;
    LoadProfile profile;
    IdleAccounting accounting = IdleAccounting::kIdleOff;
    std::optional<ReferenceDesign> design; // reused instead of dimensioning
    bool joint_fixed_point = false;        // re-derive the queue from the game rates until stable
    int joint_max_rounds = 10;
};

struct IntervalRow
{
    int index = 0;
    double load_fraction = 0.0;
    double adaptive_ee = 0.0;  // bit/J
    double reference_ee = 0.0; // bit/J
    double adaptive_power_w = 0.0;
    double reference_power_w = 0.0;
    double adaptive_rate_bps = 0.0;
    double reference_rate_bps = 0.0;
    double adaptive_antennas = 0.0;
    double reference_antennas = 0.0;
    double adaptive_activity = 0.0;
    double reference_activity = 0.0;
    int game_sweeps = 0;
    bool nash_certified = false;

    double ee_gain() const { return adaptive_ee / reference_ee - 1.0; }
    double energy_saving() const { return 1.0 - adaptive_power_w / reference_power_w; }
    double rate_change() const { return adaptive_rate_bps / reference_rate_bps - 1.0; }
    bool operator==(const IntervalRow &) const = default;
};

// Daily figures over equally long intervals, as fractions (0.24 is 24 %).
struct DailyAggregates
{
    double ee_gain = 0.0;       // mean adaptive EE / mean reference EE - 1
    double energy_saving = 0.0; // 1 - adaptive energy / reference energy
    double rate_change = 0.0;   // mean adaptive rate / mean reference rate - 1
    bool operator==(const DailyAggregates &) const = default;
};

DailyAggregates aggregate(const std::vector<IntervalRow> &rows);

struct DailyReport
{
    ReferenceDesign design;
    double lambda_max = 0.0;
    std::string profile_label;
    std::vector<IntervalRow> intervals;
    DailyAggregates aggregates;
    std::vector<AntennaPolicy> policies; // converged adaptive policy per interval
    std::vector<std::vector<int>> maxtol; // per interval, per sweep
    std::vector<bool> monotone_traces;    // per interval, see trace_non_increasing
    nlohmann::json config;                // echo of the run configuration
};

nlohmann::json to_json(const RunConfig &config);

// Coupling gains of the configured layout.
CouplingGains network_gains(const SimulationConfig &sim);

// Dimensions the reference system of `sim`.
ReferenceDesign dimension(const SimulationConfig &sim);

// Intervals are solved in parallel with OpenMP. Throws std::runtime_error naming the interval when a game
// does not converge.
DailyReport run_daily(const RunConfig &config);

namespace reference
{
DailyReport run_daily(const RunConfig &config);
} // namespace reference

enum class SweepDimension
{
    kRadius, // cell radius in m, re-dimensioned per value
    kPower,  // transmit power per antenna in W, pinned during dimensioning
};

SweepDimension sweep_dimension_from_string(const std::string &s); // "radius" | "p"
std::string to_string(SweepDimension d);

std::vector<DailyReport> sweep(const RunConfig &config, SweepDimension dimension, const std::vector<double> &values);

} // namespace mmee
