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

#include "mmee/dimensioning.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mmee/rate_model.hpp"

namespace mmee
{

SymmetricNetwork SymmetricNetwork::from_gains(const CouplingGains &gains, double cell_radius)
{
    if (gains.num_cells() == 0)
        throw std::invalid_argument("SymmetricNetwork: empty coupling gains");
    return {gains.g_own[0], gains.cross_row_sum(0), cell_radius};
}

void DimensioningConfig::validate() const
{
    if (k_cap < 1 || m_cap < 2)
        throw std::invalid_argument("DimensioningConfig: caps must allow at least K = 1, M = 2");
    if (!(p_min > 0.0) || !(p_max > p_min))
        throw std::invalid_argument("DimensioningConfig: need 0 < p_min < p_max");
    if (tpa_grid_points < 3)
        throw std::invalid_argument("DimensioningConfig: the TPA grid needs at least three points");
    if (!(golden_tolerance > 0.0))
        throw std::invalid_argument("DimensioningConfig: golden tolerance must be positive");
    if (fixed_p && !(*fixed_p > 0.0))
        throw std::invalid_argument("DimensioningConfig: pinned power must be positive");
}

double symmetric_ee(int users, int antennas, double p, const SymmetricNetwork &net, const SystemParams &params)
{
    SystemParams sp = params;
    sp.k_max = users;
    sp.antenna_power_w = p;
    const RateContext ctx{net.own_gain, p * antennas * net.cross_sum, users, static_cast<double>(antennas)};
    const double rate = avg_user_rate(ctx, sp);
    const auto power = total_power(antennas, users, rate, sp, true);
    return users * rate / power.total;
}

namespace
{

constexpr double kInvPhi = 0.6180339887498948482;

// symmetric_ee with the p-independent parts hoisted out.
struct EeEvaluator
{
    double k, m, beta, noise, snr_coeff, m_s, c0, c1_bb, coding;
    const PaModel *pa;

    EeEvaluator(int users, int antennas, const SymmetricNetwork &net, const SystemParams &params)
    {
        SystemParams sp = params;
        sp.k_max = users;
        k = users;
        m = antennas;
        beta = sp.pre_log_factor();
        noise = sp.noise_power_w * net.own_gain;
        snr_coeff = (m / k) * (m - k);
        m_s = m * net.cross_sum;
        const auto bb = baseband_power(antennas, users, 0.0, sp);
        c0 = bb.c0_bb + sp.p_oth_w;
        c1_bb = bb.c1_bb;
        coding = sp.coding_power_per_bps() * k;
        pa = &params.pa;
    }

    double operator()(double p, double pa_in) const
    {
        const double rate = beta * std::log2(1.0 + p * snr_coeff / (noise + p * m_s));
        return k * rate / (c0 + m * (c1_bb + pa_in) + coding * rate);
    }

    double operator()(double p) const { return (*this)(p, pa_input_power(p, *pa)); }
};

struct PowerRange
{
    double lo, hi;
};

PowerRange power_range(const SystemParams &params, const DimensioningConfig &config)
{
    config.validate();
    double hi = config.p_max;
    if (params.pa.max_output_w)
        hi = std::min(hi, pa_backoff_limit(config.p_max, params.pa));
    if (!(hi > config.p_min))
        throw std::invalid_argument("optimize_p: empty feasible power range");
    return {config.p_min, hi};
}

// Logarithmic grid and the matching PA input powers.
struct PowerGrid
{
    std::vector<double> p, pa_in;

    PowerGrid(PowerRange range, int points, const PaModel &pa)
    {
        p.resize(points);
        pa_in.resize(points);
        const double ratio = std::log(range.hi / range.lo);
        for (int i = 0; i < points; ++i)
        {
            p[i] = i + 1 == points ? range.hi : range.lo * std::exp(ratio * i / (points - 1));
            pa_in[i] = pa_input_power(p[i], pa);
        }
    }
};

PowerOptimum golden_section(const EeEvaluator &ee, double lo, double hi, double tolerance)
{
    double a = lo, b = hi;
    double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
    double f1 = ee(x1), f2 = ee(x2);
    while (b - a > tolerance)
    {
        if (f1 < f2)
        {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = ee(x2);
        }
        else
        {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = ee(x1);
        }
    }
    PowerOptimum best{0.5 * (a + b), 0.0};
    best.ee = ee(best.p);
    for (double edge : {lo, hi})
    {
        const double v = ee(edge);
        if (v > best.ee)
            best = {edge, v};
    }
    return best;
}

PowerOptimum optimize_p_impl(const EeEvaluator &ee, PowerRange range, const PowerGrid *grid,
                             const DimensioningConfig &config)
{
    if (config.fixed_p)
        return {*config.fixed_p, ee(*config.fixed_p)};
    if (ee.pa->kind == PaKind::kEtPa)
        return golden_section(ee, range.lo, range.hi, config.golden_tolerance);

    std::size_t best_i = 0;
    double best_v = -1.0;
    for (std::size_t i = 0; i < grid->p.size(); ++i)
    {
        const double v = ee(grid->p[i], grid->pa_in[i]);
        if (v > best_v)
        {
            best_v = v;
            best_i = i;
        }
    }
    const double lo = grid->p[best_i == 0 ? 0 : best_i - 1];
    const double hi = grid->p[std::min(best_i + 1, grid->p.size() - 1)];
    const auto refined = golden_section(ee, lo, hi, config.golden_tolerance * (hi - lo));
    if (refined.ee > best_v)
        return refined;
    return {grid->p[best_i], best_v};
}

void check_counts(int users, int antennas)
{
    if (users < 1 || antennas <= users)
        throw std::invalid_argument("optimize_p: need M > K >= 1");
}

struct BestForK
{
    int m = 0;
    PowerOptimum opt;
};

ReferenceDesign make_design(int k, const BestForK &best, const SymmetricNetwork &net, const SystemParams &params)
{
    ReferenceDesign d;
    d.k_max = k;
    d.m_max = best.m;
    d.p_opt = best.opt.p;
    d.peak_ee = best.opt.ee;
    d.pa_kind = params.pa.kind;
    d.cell_radius = net.cell_radius;
    d.own_gain = net.own_gain;
    d.cross_sum = net.cross_sum;
    SystemParams sp = design_params(params, d);
    d.peak_rate = avg_user_rate({net.own_gain, d.p_opt * d.m_max * net.cross_sum, k, static_cast<double>(d.m_max)}, sp);
    return d;
}

ReferenceDesign reduce(const std::vector<BestForK> &per_k, const SymmetricNetwork &net, const SystemParams &params)
{
    int best_k = 1;
    for (int k = 1; k <= static_cast<int>(per_k.size()); ++k)
        if (per_k[k - 1].opt.ee > per_k[best_k - 1].opt.ee)
            best_k = k;
    return make_design(best_k, per_k[best_k - 1], net, params);
}

} // namespace

PowerOptimum optimize_p(int users, int antennas, const SymmetricNetwork &net, const SystemParams &params,
                        const DimensioningConfig &config)
{
    check_counts(users, antennas);
    const auto range = power_range(params, config);
    const EeEvaluator ee(users, antennas, net, params);
    if (params.pa.kind == PaKind::kEtPa || config.fixed_p)
        return optimize_p_impl(ee, range, nullptr, config);
    const PowerGrid grid(range, config.tpa_grid_points, params.pa);
    return optimize_p_impl(ee, range, &grid, config);
}

void ReferenceDesign::validate() const
{
    if (k_max < 1 || m_max <= k_max)
        throw std::invalid_argument("ReferenceDesign: need M_max > K_max >= 1");
    if (!(p_opt > 0.0) || !(peak_ee > 0.0))
        throw std::invalid_argument("ReferenceDesign: power and peak EE must be positive");
    if (!(own_gain > 0.0) || !(cross_sum >= 0.0))
        throw std::invalid_argument("ReferenceDesign: invalid coupling gains");
}

SystemParams design_params(const SystemParams &base, const ReferenceDesign &design)
{
    SystemParams sp = base;
    sp.k_max = design.k_max;
    sp.antenna_power_w = design.p_opt;
    return sp;
}

ReferenceDesign dimension_reference(const SymmetricNetwork &net, const SystemParams &params,
                                    const DimensioningConfig &config)
{
    const auto range = power_range(params, config);
    std::unique_ptr<PowerGrid> grid;
    if (params.pa.kind == PaKind::kTpa && !config.fixed_p)
        grid = std::make_unique<PowerGrid>(range, config.tpa_grid_points, params.pa);

    std::vector<BestForK> per_k(config.k_cap);
#pragma omp parallel for schedule(dynamic)
    for (int k = 1; k <= config.k_cap; ++k)
    {
        BestForK best;
        best.opt.ee = -1.0;
        for (int m = k + 1; m <= config.m_cap; ++m)
        {
            const EeEvaluator ee(k, m, net, params);
            const auto opt = optimize_p_impl(ee, range, grid.get(), config);
            if (opt.ee > best.opt.ee)
                best = {m, opt};
        }
        per_k[k - 1] = best;
    }
    return reduce(per_k, net, params);
}

namespace reference
{

ReferenceDesign dimension_reference(const SymmetricNetwork &net, const SystemParams &params,
                                    const DimensioningConfig &config)
{
    std::vector<BestForK> per_k;
    for (int k = 1; k <= config.k_cap; ++k)
    {
        BestForK best;
        best.opt.ee = -1.0;
        for (int m = k + 1; m <= config.m_cap; ++m)
        {
            const auto opt = optimize_p(k, m, net, params, config);
            if (opt.ee > best.opt.ee)
                best = {m, opt};
        }
        per_k.push_back(best);
    }
    return reduce(per_k, net, params);
}

} // namespace reference

double local_optimality_margin(const ReferenceDesign &design, const SystemParams &params,
                               const DimensioningConfig &config)
{
    const auto net = design.network();
    const double base = optimize_p(design.k_max, design.m_max, net, params, config).ee;
    double worst = -1.0;
    for (int dk = -1; dk <= 1; ++dk)
        for (int dm = -1; dm <= 1; ++dm)
        {
            const int k = design.k_max + dk, m = design.m_max + dm;
            if ((dk == 0 && dm == 0) || k < 1 || m <= k || k > config.k_cap || m > config.m_cap)
                continue;
            worst = std::max(worst, optimize_p(k, m, net, params, config).ee / base - 1.0);
        }
    return worst;
}

std::vector<double> reference_rates(const ReferenceDesign &design, const SystemParams &params, double activity)
{
    if (!(activity >= 0.0 && activity <= 1.0))
        throw std::invalid_argument("reference_rates: activity must lie in [0, 1]");
    const SystemParams sp = design_params(params, design);
    const double interference = activity * design.p_opt * design.m_max * design.cross_sum;
    std::vector<double> rates(design.k_max);
    for (int n = 1; n <= design.k_max; ++n)
        rates[n - 1] = avg_user_rate({design.own_gain, interference, n, static_cast<double>(design.m_max)}, sp);
    return rates;
}

QueueModel reference_queue(const ReferenceDesign &design, const SystemParams &params, double per_user_bits)
{
    QueueModel q;
    q.servers = design.k_max;
    q.per_user_bits = per_user_bits;
    q.rates = reference_rates(design, params, 1.0);
    return q;
}

double calibrate_reference_lambda(const ReferenceDesign &design, const SystemParams &params, double per_user_bits,
                                  double target_blocking)
{
    return calibrate_lambda_max(reference_queue(design, params, per_user_bits), target_blocking);
}

namespace
{

StateDistribution reference_distribution(double activity, const ReferenceDesign &design, const SystemParams &params,
                                         double lambda, double per_user_bits, std::vector<double> *rates_out)
{
    QueueModel q;
    q.servers = design.k_max;
    q.per_user_bits = per_user_bits;
    q.rates = reference_rates(design, params, activity);
    q.arrival_rate = lambda;
    auto pi = steady_state(q);
    if (rates_out)
        *rates_out = std::move(q.rates);
    return pi;
}

} // namespace

double activity_map(double activity, const ReferenceDesign &design, const SystemParams &params, double lambda,
                    double per_user_bits)
{
    return reference_distribution(activity, design, params, lambda, per_user_bits, nullptr).activity();
}

ActivitySolution reference_activity_fixed_point(const ReferenceDesign &design, const SystemParams &params,
                                                double load_fraction, double lambda_max, double per_user_bits,
                                                const ActivityOptions &options)
{
    design.validate();
    if (!(load_fraction > 0.0 && load_fraction <= 1.0))
        throw std::invalid_argument("reference_activity_fixed_point: load fraction must lie in (0, 1]");
    const double lambda = effective_load_fraction(load_fraction) * lambda_max;

    ActivitySolution sol;
    double a = std::clamp(options.initial_activity, 0.0, 1.0);
    if (load_fraction == 1.0)
        a = 1.0;
    else
    {
        bool damp = options.always_damp;
        double prev_delta = 0.0;
        bool converged = false;
        for (int it = 1; it <= options.max_iterations; ++it)
        {
            sol.iterations = it;
            const double next = activity_map(a, design, params, lambda, per_user_bits);
            const double delta = next - a;
            if (std::abs(delta) <= options.tolerance)
            {
                a = next;
                converged = true;
                break;
            }
            if (prev_delta * delta < 0.0)
                damp = true;
            a = damp ? a + 0.5 * delta : next;
            prev_delta = delta;
        }
        if (!converged)
            throw std::runtime_error("reference_activity_fixed_point: no convergence within " +
                                     std::to_string(options.max_iterations) + " iterations");
    }

    sol.activity = a;
    sol.pi = reference_distribution(a, design, params, lambda, per_user_bits, &sol.rates);
    const SystemParams sp = design_params(params, design);
    double served = 0.0, users = 0.0;
    sol.mean_power = sol.pi.pi[0] * idle_power(sp, options.accounting);
    for (int n = 1; n <= design.k_max; ++n)
    {
        const double rate = sol.rates[n - 1];
        const double power = total_power(design.m_max, n, rate, sp, true).total;
        sol.reference_ee += sol.pi.pi[n] * n * rate / power;
        sol.mean_power += sol.pi.pi[n] * power;
        served += sol.pi.pi[n] * n * rate;
        users += sol.pi.pi[n] * n;
        sol.mean_antennas += sol.pi.pi[n] * design.m_max;
    }
    sol.reference_rate = users > 0.0 ? served / users : 0.0;
    return sol;
}

nlohmann::json to_json(const ReferenceDesign &design)
{
    return {{"k_max", design.k_max},
            {"m_max", design.m_max},
            {"p_opt_w", design.p_opt},
            {"peak_ee_bit_per_j", design.peak_ee},
            {"peak_rate_bps", design.peak_rate},
            {"pa", to_string(design.pa_kind)},
            {"cell_radius_m", design.cell_radius},
            {"own_gain", design.own_gain},
            {"cross_sum", design.cross_sum}};
}

ReferenceDesign design_from_json(const nlohmann::json &j)
{
    ReferenceDesign d;
    try
    {
        d.k_max = j.at("k_max").get<int>();
        d.m_max = j.at("m_max").get<int>();
        d.p_opt = j.at("p_opt_w").get<double>();
        d.peak_ee = j.at("peak_ee_bit_per_j").get<double>();
        d.peak_rate = j.at("peak_rate_bps").get<double>();
        d.pa_kind = pa_kind_from_string(j.at("pa").get<std::string>());
        d.cell_radius = j.at("cell_radius_m").get<double>();
        d.own_gain = j.at("own_gain").get<double>();
        d.cross_sum = j.at("cross_sum").get<double>();
    }
    catch (const nlohmann::json::exception &e)
    {
        throw std::invalid_argument(std::string("design_from_json: ") + e.what());
    }
    d.validate();
    return d;
}

} // namespace mmee
