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

#include "mmee/rate_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mmee
{

namespace
{

void check_context(const RateContext &ctx, const SystemParams &params)
{
    if (ctx.users < 1)
        throw std::invalid_argument("rate: per-user rate is undefined with zero users");
    if (ctx.users > params.k_max)
        throw std::invalid_argument("rate: users exceed K_max");
    if (ctx.antennas < ctx.users)
        throw std::invalid_argument("rate: zero forcing needs at least as many antennas as users");
    if (!(ctx.interference_w >= 0.0))
        throw std::invalid_argument("rate: interference must be non-negative");
}

} // namespace

double rate_denominator(const RateContext &ctx, const SystemParams &params)
{
    return params.noise_power_w * ctx.own_gain + ctx.interference_w;
}

double avg_user_rate(const RateContext &ctx, const SystemParams &params)
{
    check_context(ctx, params);
    const double n = ctx.users;
    const double m = ctx.antennas;
    const double snr = params.antenna_power_w * (m / n) * (m - n) / rate_denominator(ctx, params);
    return params.pre_log_factor() * std::log2(1.0 + snr);
}

double sinr_single_antenna(const RateContext &ctx, const SystemParams &params)
{
    check_context(ctx, params);
    return (params.antenna_power_w / ctx.users) / rate_denominator(ctx, params);
}

double rate_from_single_antenna_sinr(double gamma, int users, double antennas, const SystemParams &params)
{
    const double arg = 1.0 - users * antennas * gamma + gamma * antennas * antennas;
    return params.pre_log_factor() * std::log(arg) / std::numbers::ln2;
}

double bound_rate(const OracleInstance &inst, const SystemParams &params)
{
    RateContext ctx;
    ctx.own_gain = 1.0 / inst.own_gain;
    ctx.users = inst.users;
    ctx.antennas = inst.antennas;
    for (const auto &d : inst.interferers)
        ctx.interference_w += params.antenna_power_w * d.antennas * d.gain / inst.own_gain;
    return avg_user_rate(ctx, params);
}

nlohmann::json to_json(const OracleInstance &inst, const OracleResult &res)
{
    nlohmann::json interferers = nlohmann::json::array();
    for (const auto &d : inst.interferers)
        interferers.push_back({{"antennas", d.antennas}, {"users", d.users}, {"gain", d.gain}});
    return {{"users", inst.users},
            {"antennas", inst.antennas},
            {"own_gain", inst.own_gain},
            {"interferers", interferers},
            {"mean_rate_bps", res.mean_rate},
            {"std_error_bps", res.std_error},
            {"trials", res.trials}};
}

} // namespace mmee
