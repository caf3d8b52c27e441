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

#include "mmee/power_model.hpp"

#include <cmath>
#include <stdexcept>

namespace mmee
{

double pa_backoff_limit(double p, const PaModel &pa) { return pa.max_output(p) / pa.backoff_ratio(); }

double pa_input_power(double p, const PaModel &pa)
{
    if (!(p >= 0.0))
        throw std::invalid_argument("pa_input_power: output power must be non-negative");
    const double p_max = pa.max_output(p);
    if (p > pa_backoff_limit(p, pa) * (1.0 + 1e-12))
        throw std::invalid_argument("pa_input_power: output power violates the PAPR back-off");
    const double eta = pa.max_efficiency;
    if (pa.kind == PaKind::kTpa)
        return std::sqrt(p * p_max) / eta;
    return (p + pa.epsilon * p_max) / ((1.0 + pa.epsilon) * eta);
}

BasebandPower baseband_power(int antennas, int users, double rate_per_user, const SystemParams &params)
{
    if (users < 0 || antennas < 0)
        throw std::invalid_argument("baseband_power: counts must be non-negative");
    const double b_over_l = params.bandwidth_hz / params.l_bs_flops_per_w;
    const double tc = params.coherence_symbols;
    const double n = users;

    // Cubic and quadratic terms are per coherence block.
    const double c03 = b_over_l / (3.0 * tc);
    const double c11 = b_over_l * (2.0 + 1.0 / tc);
    const double c12 = 3.0 * b_over_l / tc;

    BasebandPower out;
    out.c0_bb = params.p_syn_w + c03 * n * n * n;
    out.c1_bb = params.p_bs_w + c11 * n + c12 * n * n;
    out.rate_coding_term = params.coding_power_per_bps() * n * rate_per_user;
    return out;
}

AffinePower affine_power(int users, const SystemParams &params)
{
    const auto bb = baseband_power(0, users, 0.0, params);
    return {bb.c0_bb + params.p_oth_w, bb.c1_bb + pa_input_power(params.antenna_power_w, params.pa)};
}

PowerBreakdown total_power(int antennas, int users, double rate_per_user, const SystemParams &params,
                           bool include_rate_term)
{
    const auto bb = baseband_power(antennas, users, rate_per_user, params);
    PowerBreakdown out;
    out.c0 = bb.c0_bb + params.p_oth_w;
    out.c1 = bb.c1_bb + pa_input_power(params.antenna_power_w, params.pa);
    out.rate_coding_term = bb.rate_coding_term;
    if (users == 0)
        return out; // switched off
    out.total = out.c0 + out.c1 * antennas + (include_rate_term ? out.rate_coding_term : 0.0);
    return out;
}

std::string to_string(IdleAccounting mode)
{
    return mode == IdleAccounting::kIdleOff ? "idle-off" : "active-idle";
}

IdleAccounting idle_accounting_from_string(const std::string &s)
{
    if (s == "idle-off")
        return IdleAccounting::kIdleOff;
    if (s == "active-idle")
        return IdleAccounting::kActiveIdle;
    throw std::invalid_argument("unknown idle accounting mode \"" + s + "\"");
}

double idle_power(const SystemParams &params, IdleAccounting mode)
{
    if (mode == IdleAccounting::kIdleOff)
        return 0.0;
    return affine_power(0, params).c0;
}

} // namespace mmee
