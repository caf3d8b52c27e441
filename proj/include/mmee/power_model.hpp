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

#include <string>

#include "mmee/params.hpp"

namespace mmee
{

struct BasebandPower
{
    double c0_bb = 0.0;            // sum_i C_{0,i} n^i
    double c1_bb = 0.0;            // sum_i C_{1,i} n^i, per antenna
    double rate_coding_term = 0.0; // (P_COD + P_DEC) n R
};

// total = c0 + c1 M (+ rate_coding_term when requested). A cell with no users is switched off and
// reports total = 0 while still carrying its active-idle coefficients.
struct PowerBreakdown
{
    double c0 = 0.0;
    double c1 = 0.0;
    double total = 0.0;
    double rate_coding_term = 0.0;
};

// Largest average output allowed by the PAPR back-off for `pa` when it is sized for power p.
double pa_backoff_limit(double p, const PaModel &pa);

// Input power drawn by one PA delivering average output p.
//   TPA:   sqrt(p P_max) / eta
//   ET-PA: (p + eps P_max) / ((1 + eps) eta)
double pa_input_power(double p, const PaModel &pa);

BasebandPower baseband_power(int antennas, int users, double rate_per_user, const SystemParams &params);

// Load-independent part C0 (without the coding term) and per-antenna slope C1 for `users` users.
struct AffinePower
{
    double c0 = 0.0;
    double c1 = 0.0;
};
AffinePower affine_power(int users, const SystemParams &params);

PowerBreakdown total_power(int antennas, int users, double rate_per_user, const SystemParams &params,
                           bool include_rate_term);

enum class IdleAccounting
{
    kIdleOff,    // a BS without users draws nothing
    kActiveIdle, // a BS without users keeps its load-independent part C0(0)
};

std::string to_string(IdleAccounting mode);
IdleAccounting idle_accounting_from_string(const std::string &s); // "idle-off" | "active-idle"

// Power of the idle state under `mode`.
double idle_power(const SystemParams &params, IdleAccounting mode);

} // namespace mmee
