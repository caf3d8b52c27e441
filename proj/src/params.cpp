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

#include "mmee/params.hpp"

#include <cmath>
#include <stdexcept>

namespace mmee
{

std::string to_string(PaKind kind) { return kind == PaKind::kTpa ? "tpa" : "etpa"; }

PaKind pa_kind_from_string(const std::string &s)
{
    if (s == "tpa")
        return PaKind::kTpa;
    if (s == "etpa")
        return PaKind::kEtPa;
    throw std::invalid_argument("unknown PA kind '" + s + "' (expected tpa or etpa)");
}

double PaModel::backoff_ratio() const { return std::pow(10.0, papr_backoff_db / 10.0); }

double PaModel::max_output(double p) const { return max_output_w ? *max_output_w : p * backoff_ratio(); }

void PaModel::validate() const
{
    if (!(max_efficiency > 0.0 && max_efficiency <= 1.0))
        throw std::invalid_argument("PaModel: max_efficiency must lie in (0, 1]");
    if (kind == PaKind::kEtPa && !(epsilon > 0.0))
        throw std::invalid_argument("PaModel: ET-PA epsilon must be positive");
    if (max_output_w && !(*max_output_w > 0.0))
        throw std::invalid_argument("PaModel: max_output_w must be positive");
    if (!(papr_backoff_db >= 0.0))
        throw std::invalid_argument("PaModel: papr_backoff_db must be non-negative");
}

double SystemParams::overhead_factor() const { return 1.0 - pilot_reuse * k_max / coherence_symbols; }

void SystemParams::validate() const
{
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("SystemParams: bandwidth must be positive");
    if (k_max < 1)
        throw std::invalid_argument("SystemParams: k_max must be at least 1");
    if (!(overhead_factor() > 0.0))
        throw std::invalid_argument("SystemParams: pilot_reuse * k_max must be below the coherence interval");
    if (noise_power_w < 0.0 || antenna_power_w < 0.0 || p_syn_w < 0.0 || p_bs_w < 0.0 || p_oth_w < 0.0 ||
        p_cod_w_per_bps < 0.0 || p_dec_w_per_bps < 0.0)
        throw std::invalid_argument("SystemParams: powers must be non-negative");
    if (!(l_bs_flops_per_w > 0.0))
        throw std::invalid_argument("SystemParams: l_bs must be positive");
    pa.validate();
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

SystemParams default_params(PaKind kind)
{
    SystemParams p;
    p.noise_power_w = dbm_to_watt(-96.0);
    p.pa.kind = kind;
    return p;
}

} // namespace mmee
