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

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmee/params.hpp"

namespace mmee
{

// Inputs of the closed-form per-user rate of one cell.
//
// `interference_w` is sum_{d != c} G_cd * p * Mbar_d; interferer antenna counts may be fractional.
// `antennas` is integral in normal use; the best-response search evaluates its continuous relaxation.
struct RateContext
{
    double own_gain = 0.0; // G_cc
    double interference_w = 0.0;
    int users = 0;
    double antennas = 0.0;
};

// sigma^2 G_cc + I
double rate_denominator(const RateContext &ctx, const SystemParams &params);

// Achievable average per-user rate of a ZF cell with equal power allocation, in bit/s:
//   B (1 - alpha K_max / T_c) log2(1 + p (M/n) (M - n) / (sigma^2 G_cc + I))
// Zero when M == n. Throws std::invalid_argument for n == 0, n > K_max, M < n or I < 0.
double avg_user_rate(const RateContext &ctx, const SystemParams &params);

// gamma_{c,1} = (p / n) / (sigma^2 G_cc + I)
double sinr_single_antenna(const RateContext &ctx, const SystemParams &params);

// Same rate written through gamma_{c,1}: B (1 - alpha K_max / T_c) ln(1 - n M gamma + gamma M^2) / ln 2.
double rate_from_single_antenna_sinr(double gamma, int users, double antennas, const SystemParams &params);

// ---- Monte-Carlo ergodic-rate oracle -------------------------------------------------------

struct OracleInterferer
{
    int antennas = 0;
    int users = 1;
    double gain = 0.0; // g_dck, large-scale gain from the interfering BS to the observed user
};

// One user location: the observed cell serves `users` with `antennas`, own large-scale gain `own_gain`.
struct OracleInstance
{
    int users = 1;
    int antennas = 2;
    double own_gain = 1.0; // g_cck
    std::vector<OracleInterferer> interferers;
};

struct OracleResult
{
    double mean_rate = 0.0; // bit/s, including the pilot overhead factor
    double std_error = 0.0; // standard error of the mean over trials
    std::uint64_t trials = 0;
};

// Closed-form bound at a single location: G_cc = 1/g_cck and G_cd = g_dck/g_cck.
double bound_rate(const OracleInstance &inst, const SystemParams &params);

// Draws i.i.d. Rayleigh channels, builds column-normalised ZF precoders in every cell, allocates
// p M / K per user and averages log2(1 + SINR) over users and trials. Deterministic in `seed`.
OracleResult monte_carlo_rate_oracle(const OracleInstance &inst, const SystemParams &params, std::uint64_t trials,
                                     std::uint64_t seed);

nlohmann::json to_json(const OracleInstance &inst, const OracleResult &res);

} // namespace mmee
