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

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmee/experiment.hpp"

namespace mmee
{

// Column order of intervals.csv.
const std::vector<std::string> &interval_columns();

std::string intervals_csv(const DailyReport &report);
nlohmann::json summary_json(const DailyReport &report);
nlohmann::json policy_json(const DailyReport &report);

// Writes intervals.csv, summary.json and policy.json into `dir`, creating it if needed.
void emit(const DailyReport &report, const std::filesystem::path &dir);

// Inverse of emit.
DailyReport read_report(const std::filesystem::path &dir);

// One row per sweep value.
std::string sweep_csv(SweepDimension dimension, const std::vector<double> &values,
                      const std::vector<DailyReport> &reports);

} // namespace mmee
