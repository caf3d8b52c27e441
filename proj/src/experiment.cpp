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

#include "mmee/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

#include "mmee/rate_model.hpp"

namespace mmee
{

DailyAggregates aggregate(const std::vector<IntervalRow> &rows)
{
    DailyAggregates agg;
    if (rows.empty())
        throw std::invalid_argument("aggregate: no intervals");
    double ee_ad = 0.0, ee_ref = 0.0, p_ad = 0.0, p_ref = 0.0, r_ad = 0.0, r_ref = 0.0;
    for (const auto &r : rows)
    {
        ee_ad += r.adaptive_ee;
        ee_ref += r.reference_ee;
        p_ad += r.adaptive_power_w;
        p_ref += r.reference_power_w;
        r_ad += r.adaptive_rate_bps;
        r_ref += r.reference_rate_bps;
    }
    agg.ee_gain = ee_ad / ee_ref - 1.0;
    agg.energy_saving = 1.0 - p_ad / p_ref;
    agg.rate_change = r_ad / r_ref - 1.0;
    return agg;
}

nlohmann::json to_json(const RunConfig &config)
{
    return {{"artifact_version", kArtifactVersion},
            {"simulation", to_json(config.sim)},
            {"profile", config.profile.label},
            {"intervals", config.profile.size()},
            {"accounting", to_string(config.accounting)},
            {"joint_fixed_point", config.joint_fixed_point},
            {"joint_max_rounds", config.joint_max_rounds},
            {"design_supplied", config.design.has_value()}};
}

CouplingGains network_gains(const SimulationConfig &sim)
{
    sim.validate();
    const auto layout = build_layout(sim.num_cells, sim.cell_radius_m, sim.min_distance_m, sim.grid_size);
    return compute_coupling(layout, sim.path_loss);
}

ReferenceDesign dimension(const SimulationConfig &sim)
{
    const auto net = SymmetricNetwork::from_gains(network_gains(sim), sim.cell_radius_m);
    return dimension_reference(net, sim.params, sim.dimensioning);
}

namespace
{

struct Prepared
{
    CouplingGains gains;
    ReferenceDesign design;
    SystemParams params; // K_max and p from the design
    double lambda_max = 0.0;
    std::vector<std::vector<double>> peak_rates; // per cell, R(n) under the peak-load game
};

std::vector<double> cell_rates(const GameState &state, std::size_t c, const CouplingGains &gains,
                               const SystemParams &params)
{
    const double interference = effective_interference(c, state.policy, state.pi, gains, params.antenna_power_w);
    std::vector<double> rates(params.k_max);
    for (int n = 1; n <= params.k_max; ++n)
        rates[n - 1] =
            avg_user_rate({gains.g_own[c], interference, n, static_cast<double>(state.policy.cells[c][n])}, params);
    return rates;
}

std::vector<StateDistribution> queue_states(const std::vector<std::vector<double>> &rates, const RunConfig &config,
                                            const Prepared &prep, double lambda)
{
    std::vector<StateDistribution> pi;
    for (const auto &r : rates)
    {
        QueueModel q;
        q.servers = prep.design.k_max;
        q.per_user_bits = config.sim.per_user_bits;
        q.rates = r;
        q.arrival_rate = lambda;
        pi.push_back(steady_state(q));
    }
    return pi;
}

GameConfig game_config(const RunConfig &config, const Prepared &prep)
{
    GameConfig gc;
    gc.m_max = prep.design.m_max;
    gc.max_sweeps = config.sim.max_sweeps;
    return gc;
}

Prepared prepare(const RunConfig &config)
{
    config.sim.validate();
    if (config.joint_max_rounds < 1)
        throw std::invalid_argument("run_daily: joint_max_rounds must be positive");
    if (config.profile.size() == 0)
        throw std::invalid_argument("run_daily: load profile has no intervals");
    Prepared prep;
    prep.gains = network_gains(config.sim);
    if (config.design)
    {
        prep.design = *config.design;
        prep.design.validate();
        if (prep.design.pa_kind != config.sim.params.pa.kind)
            throw std::invalid_argument("run_daily: supplied design was dimensioned for another PA type");
    }
    else
        prep.design = dimension_reference(SymmetricNetwork::from_gains(prep.gains, config.sim.cell_radius_m),
                                          config.sim.params, config.sim.dimensioning);
    prep.params = design_params(config.sim.params, prep.design);
    prep.lambda_max = calibrate_reference_lambda(prep.design, config.sim.params, config.sim.per_user_bits,
                                                 config.sim.target_blocking);

    const std::size_t nc = prep.gains.num_cells();
    const std::vector<std::vector<double>> ref_rates(nc, reference_rates(prep.design, config.sim.params, 1.0));
    const auto peak = run_game(prep.gains, queue_states(ref_rates, config, prep, prep.lambda_max), prep.params,
                               game_config(config, prep));
    for (std::size_t c = 0; c < nc; ++c)
        prep.peak_rates.push_back(cell_rates(peak, c, prep.gains, prep.params));
    return prep;
}

struct IntervalResult
{
    IntervalRow row;
    AntennaPolicy policy;
    std::vector<int> maxtol;
    bool monotone = false;
};

GameState interval_game(const RunConfig &config, const Prepared &prep, double lambda, int index)
{
    const auto gc = game_config(config, prep);
    try
    {
        auto state = run_game(prep.gains, queue_states(prep.peak_rates, config, prep, lambda), prep.params, gc);
        if (!config.joint_fixed_point)
            return state;
        for (int round = 0; round < config.joint_max_rounds; ++round)
        {
            std::vector<std::vector<double>> rates;
            for (std::size_t c = 0; c < prep.gains.num_cells(); ++c)
                rates.push_back(cell_rates(state, c, prep.gains, prep.params));
            auto pi = queue_states(rates, config, prep, lambda);
            double change = 0.0;
            for (std::size_t c = 0; c < pi.size(); ++c)
                for (std::size_t n = 0; n < pi[c].pi.size(); ++n)
                    change = std::max(change, std::abs(pi[c].pi[n] - state.pi[c].pi[n]));
            if (change <= 1e-12)
                break;
            state = run_game(prep.gains, std::move(pi), prep.params, gc);
        }
        return state;
    }
    catch (const std::runtime_error &e)
    {
        throw std::runtime_error("interval " + std::to_string(index) + ": " + e.what());
    }
}

IntervalResult solve_interval(const RunConfig &config, const Prepared &prep, std::size_t h)
{
    const auto &interval = config.profile.intervals[h];
    const double lambda = effective_load_fraction(interval.load_fraction) * prep.lambda_max;
    const auto state = interval_game(config, prep, lambda, interval.index);

    IntervalResult res;
    auto &row = res.row;
    row.index = interval.index;
    row.load_fraction = interval.load_fraction;
    row.game_sweeps = static_cast<int>(state.sweeps());
    row.nash_certified = verify_nash(state, prep.gains, prep.params, prep.design.m_max).holds;

    const std::size_t nc = prep.gains.num_cells();
    const double idle = idle_power(prep.params, config.accounting);
    double rate_sum = 0.0;
    for (std::size_t c = 0; c < nc; ++c)
    {
        const auto rates = cell_rates(state, c, prep.gains, prep.params);
        const auto &pi = state.pi[c].pi;
        double served = 0.0, users = 0.0;
        row.adaptive_power_w += pi[0] * idle;
        for (int n = 1; n <= prep.design.k_max; ++n)
        {
            const int m = state.policy.cells[c][n];
            const double power = total_power(m, n, rates[n - 1], prep.params, true).total;
            row.adaptive_ee += pi[n] * n * rates[n - 1] / power;
            row.adaptive_power_w += pi[n] * power;
            row.adaptive_antennas += pi[n] * m;
            served += pi[n] * n * rates[n - 1];
            users += pi[n] * n;
        }
        rate_sum += users > 0.0 ? served / users : 0.0;
        row.adaptive_activity += state.pi[c].activity();
    }
    row.adaptive_ee /= nc;
    row.adaptive_power_w /= nc;
    row.adaptive_antennas /= nc;
    row.adaptive_activity /= nc;
    row.adaptive_rate_bps = rate_sum / nc;

    ActivityOptions opts;
    opts.accounting = config.accounting;
    const auto ref = reference_activity_fixed_point(prep.design, config.sim.params, interval.load_fraction,
                                                    prep.lambda_max, config.sim.per_user_bits, opts);
    row.reference_ee = ref.reference_ee;
    row.reference_power_w = ref.mean_power;
    row.reference_rate_bps = ref.reference_rate;
    row.reference_antennas = ref.mean_antennas;
    row.reference_activity = ref.activity;

    res.policy = state.policy;
    res.monotone = trace_non_increasing(state);
    for (const auto &rec : state.trace)
        res.maxtol.push_back(rec.maxtol);
    return res;
}

DailyReport assemble(const RunConfig &config, const Prepared &prep, std::vector<IntervalResult> results)
{
    DailyReport report;
    report.design = prep.design;
    report.lambda_max = prep.lambda_max;
    report.profile_label = config.profile.label;
    report.config = to_json(config);
    for (auto &r : results)
    {
        report.intervals.push_back(r.row);
        report.policies.push_back(std::move(r.policy));
        report.maxtol.push_back(std::move(r.maxtol));
        report.monotone_traces.push_back(r.monotone);
    }
    report.aggregates = aggregate(report.intervals);
    return report;
}

} // namespace

DailyReport run_daily(const RunConfig &config)
{
    const auto prep = prepare(config);
    const auto count = static_cast<long>(config.profile.size());
    std::vector<IntervalResult> results(count);
    std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic)
    for (long h = 0; h < count; ++h)
    {
        try
        {
            results[h] = solve_interval(config, prep, h);
        }
        catch (...)
        {
            errors[h] = std::current_exception();
        }
    }
    for (const auto &e : errors)
        if (e)
            std::rethrow_exception(e);
    return assemble(config, prep, std::move(results));
}

namespace reference
{

DailyReport run_daily(const RunConfig &config)
{
    const auto prep = prepare(config);
    std::vector<IntervalResult> results;
    for (std::size_t h = 0; h < config.profile.size(); ++h)
        results.push_back(solve_interval(config, prep, h));
    return assemble(config, prep, std::move(results));
}

} // namespace reference

SweepDimension sweep_dimension_from_string(const std::string &s)
{
    if (s == "radius")
        return SweepDimension::kRadius;
    if (s == "p")
        return SweepDimension::kPower;
    throw std::invalid_argument("unknown sweep dimension \"" + s + "\"");
}

std::string to_string(SweepDimension d) { return d == SweepDimension::kRadius ? "radius" : "p"; }

std::vector<DailyReport> sweep(const RunConfig &config, SweepDimension dimension, const std::vector<double> &values)
{
    if (values.empty())
        throw std::invalid_argument("sweep: no values");
    std::vector<DailyReport> out;
    for (double v : values)
    {
        if (!(v > 0.0))
            throw std::invalid_argument("sweep: values must be positive");
        RunConfig c = config;
        c.design.reset();
        if (dimension == SweepDimension::kRadius)
            c.sim.cell_radius_m = v;
        else
            c.sim.dimensioning.fixed_p = v;
        out.push_back(run_daily(c));
    }
    return out;
}

} // namespace mmee
