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

#include "mmee/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>

namespace mmee
{

void SimulationConfig::validate() const
{
    params.validate();
    dimensioning.validate();
    if (!(cell_radius_m > 0.0) || !(min_distance_m >= 0.0) || min_distance_m >= cell_radius_m)
        throw std::invalid_argument("config: need 0 <= min_distance_m < cell_radius_m");
    if (grid_size < 1)
        throw std::invalid_argument("config: grid_size must be positive");
    if (!(path_loss.coefficient > 0.0) || !(path_loss.exponent > 0.0))
        throw std::invalid_argument("config: path loss coefficient and exponent must be positive");
    if (!(per_user_bits > 0.0))
        throw std::invalid_argument("config: per_user_bits must be positive");
    if (!(target_blocking > 0.0 && target_blocking < 1.0))
        throw std::invalid_argument("config: target_blocking must lie in (0, 1)");
    if (max_sweeps < 1)
        throw std::invalid_argument("config: max_sweeps must be positive");
}

SimulationConfig default_config(PaKind kind)
{
    SimulationConfig c;
    c.params = default_params(kind);
    return c;
}

namespace
{

using Setter = std::function<void(SimulationConfig &, const nlohmann::json &)>;

template <class T> Setter field(T SimulationConfig::*member)
{
    return [member](SimulationConfig &c, const nlohmann::json &v) { c.*member = v.get<T>(); };
}

template <class T> Setter param(T SystemParams::*member)
{
    return [member](SimulationConfig &c, const nlohmann::json &v) { c.params.*member = v.get<T>(); };
}

void apply_pa(SimulationConfig &c, const nlohmann::json &j)
{
    for (const auto &[key, v] : j.items())
    {
        if (key == "kind")
            c.params.pa.kind = pa_kind_from_string(v.get<std::string>());
        else if (key == "max_efficiency")
            c.params.pa.max_efficiency = v.get<double>();
        else if (key == "epsilon")
            c.params.pa.epsilon = v.get<double>();
        else if (key == "papr_backoff_db")
            c.params.pa.papr_backoff_db = v.get<double>();
        else if (key == "max_output_w")
            c.params.pa.max_output_w = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
        else
            throw std::invalid_argument("config: unknown key pa." + key);
    }
}

void apply_dimensioning(SimulationConfig &c, const nlohmann::json &j)
{
    auto &d = c.dimensioning;
    for (const auto &[key, v] : j.items())
    {
        if (key == "k_cap")
            d.k_cap = v.get<int>();
        else if (key == "m_cap")
            d.m_cap = v.get<int>();
        else if (key == "p_min_w")
            d.p_min = v.get<double>();
        else if (key == "p_max_w")
            d.p_max = v.get<double>();
        else if (key == "tpa_grid_points")
            d.tpa_grid_points = v.get<int>();
        else if (key == "golden_tolerance_w")
            d.golden_tolerance = v.get<double>();
        else if (key == "fixed_p_w")
            d.fixed_p = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
        else
            throw std::invalid_argument("config: unknown key dimensioning." + key);
    }
}

const std::map<std::string, Setter> &setters()
{
    static const std::map<std::string, Setter> table{
        {"bandwidth_hz", param(&SystemParams::bandwidth_hz)},
        {"noise_power_w", param(&SystemParams::noise_power_w)},
        {"noise_power_dbm",
         [](SimulationConfig &c, const nlohmann::json &v) { c.params.noise_power_w = dbm_to_watt(v.get<double>()); }},
        {"coherence_symbols", param(&SystemParams::coherence_symbols)},
        {"pilot_reuse", param(&SystemParams::pilot_reuse)},
        {"antenna_power_w", param(&SystemParams::antenna_power_w)},
        {"p_syn_w", param(&SystemParams::p_syn_w)},
        {"p_bs_w", param(&SystemParams::p_bs_w)},
        {"p_oth_w", param(&SystemParams::p_oth_w)},
        {"p_cod_w_per_bps", param(&SystemParams::p_cod_w_per_bps)},
        {"p_dec_w_per_bps", param(&SystemParams::p_dec_w_per_bps)},
        {"l_bs_flops_per_w", param(&SystemParams::l_bs_flops_per_w)},
        {"pa", apply_pa},
        {"num_cells", field(&SimulationConfig::num_cells)},
        {"cell_radius_m", field(&SimulationConfig::cell_radius_m)},
        {"min_distance_m", field(&SimulationConfig::min_distance_m)},
        {"grid_size", field(&SimulationConfig::grid_size)},
        {"path_loss_coefficient_db",
         [](SimulationConfig &c, const nlohmann::json &v) {
             c.path_loss.coefficient = std::pow(10.0, v.get<double>() / 10.0);
         }},
        {"path_loss_exponent",
         [](SimulationConfig &c, const nlohmann::json &v) { c.path_loss.exponent = v.get<double>(); }},
        {"dimensioning", apply_dimensioning},
        {"per_user_bits", field(&SimulationConfig::per_user_bits)},
        {"target_blocking", field(&SimulationConfig::target_blocking)},
        {"max_sweeps", field(&SimulationConfig::max_sweeps)},
    };
    return table;
}

} // namespace

void apply_config(SimulationConfig &config, const nlohmann::json &j)
{
    if (!j.is_object())
        throw std::invalid_argument("config: top level must be a JSON object");
    for (const auto &[key, v] : j.items())
    {
        const auto it = setters().find(key);
        if (it == setters().end())
            throw std::invalid_argument("config: unknown key " + key);
        try
        {
            it->second(config, v);
        }
        catch (const nlohmann::json::exception &e)
        {
            throw std::invalid_argument("config: bad value for " + key + ": " + e.what());
        }
    }
    config.validate();
}

SimulationConfig load_config(const std::string &path, SimulationConfig base)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("config: cannot open " + path);
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(in);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw std::invalid_argument("config: " + path + ": " + e.what());
    }
    apply_config(base, j);
    return base;
}

nlohmann::json to_json(const SimulationConfig &c)
{
    const auto &p = c.params;
    nlohmann::json pa{{"kind", to_string(p.pa.kind)},
                      {"max_efficiency", p.pa.max_efficiency},
                      {"epsilon", p.pa.epsilon},
                      {"papr_backoff_db", p.pa.papr_backoff_db},
                      {"max_output_w", p.pa.max_output_w ? nlohmann::json(*p.pa.max_output_w) : nlohmann::json()}};
    const auto &d = c.dimensioning;
    nlohmann::json dim{{"k_cap", d.k_cap},
                       {"m_cap", d.m_cap},
                       {"p_min_w", d.p_min},
                       {"p_max_w", d.p_max},
                       {"tpa_grid_points", d.tpa_grid_points},
                       {"golden_tolerance_w", d.golden_tolerance},
                       {"fixed_p_w", d.fixed_p ? nlohmann::json(*d.fixed_p) : nlohmann::json()}};
    return {{"bandwidth_hz", p.bandwidth_hz},
            {"noise_power_w", p.noise_power_w},
            {"coherence_symbols", p.coherence_symbols},
            {"pilot_reuse", p.pilot_reuse},
            {"antenna_power_w", p.antenna_power_w},
            {"p_syn_w", p.p_syn_w},
            {"p_bs_w", p.p_bs_w},
            {"p_oth_w", p.p_oth_w},
            {"p_cod_w_per_bps", p.p_cod_w_per_bps},
            {"p_dec_w_per_bps", p.p_dec_w_per_bps},
            {"l_bs_flops_per_w", p.l_bs_flops_per_w},
            {"pa", pa},
            {"num_cells", c.num_cells},
            {"cell_radius_m", c.cell_radius_m},
            {"min_distance_m", c.min_distance_m},
            {"grid_size", c.grid_size},
            {"path_loss_coefficient_db", 10.0 * std::log10(c.path_loss.coefficient)},
            {"path_loss_exponent", c.path_loss.exponent},
            {"dimensioning", dim},
            {"per_user_bits", c.per_user_bits},
            {"target_blocking", c.target_blocking},
            {"max_sweeps", c.max_sweeps}};
}

} // namespace mmee
