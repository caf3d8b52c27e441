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

namespace mmee
{

enum class PaKind
{
    kTpa,
    kEtPa,
};

std::string to_string(PaKind kind);
PaKind pa_kind_from_string(const std::string &s); // "tpa" | "etpa"

struct PaModel
{
    PaKind kind = PaKind::kTpa;
    double max_efficiency = 0.8;
    double epsilon = 0.0082;                 // ET-PA only
    std::optional<double> max_output_w;      // unset: P_max,PA = p * 10^(backoff/10)
    double papr_backoff_db = 8.0;

    // P_max,PA seen by an amplifier transmitting average power p.
    double max_output(double p) const;
    double backoff_ratio() const;
    void validate() const;
};

// System constants. Powers in W, rates in bit/s; P_COD and P_DEC are stored per bit/s.
struct SystemParams
{
    double bandwidth_hz = 20e6;
    double noise_power_w = 0.0;   // B * sigma^2, total over the band
    double coherence_symbols = 5000.0;
    double pilot_reuse = 7.0;
    int k_max = 76;
    double antenna_power_w = 0.1; // p, average transmit power per antenna
    PaModel pa;
    double p_syn_w = 2.0;
    double p_bs_w = 1.0;
    double p_oth_w = 18.0;
    double p_cod_w_per_bps = 0.1e-9;
    double p_dec_w_per_bps = 0.8e-9;
    double l_bs_flops_per_w = 12.8e9;

    // 1 - alpha * K_max / T_c
    double overhead_factor() const;
    // B * (1 - alpha * K_max / T_c)
    double pre_log_factor() const { return bandwidth_hz * overhead_factor(); }
    double coding_power_per_bps() const { return p_cod_w_per_bps + p_dec_w_per_bps; }

    void validate() const;
};

double dbm_to_watt(double dbm);

SystemParams default_params(PaKind kind = PaKind::kTpa);

} // namespace mmee
