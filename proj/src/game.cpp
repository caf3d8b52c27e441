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

#include "mmee/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mmee/power_model.hpp"
#include "mmee/rate_model.hpp"

namespace mmee
{

AntennaPolicy AntennaPolicy::uniform(std::size_t num_cells, int k_max, int m_max)
{
    AntennaVector v(static_cast<std::size_t>(k_max) + 1, m_max);
    v[0] = 0;
    return AntennaPolicy{std::vector<AntennaVector>(num_cells, v)};
}

bool AntennaPolicy::feasible(int m_max) const
{
    for (const auto &v : cells)
    {
        if (v.empty() || v[0] != 0)
            return false;
        for (std::size_t n = 1; n < v.size(); ++n)
            if (v[n] < static_cast<int>(n) + 1 || v[n] > m_max)
                return false;
    }
    return true;
}

double mean_antennas(const AntennaVector &m, const StateDistribution &pi)
{
    if (m.size() != pi.pi.size())
        throw std::invalid_argument("mean_antennas: policy and distribution sizes differ");
    double acc = 0.0;
    for (std::size_t n = 1; n < m.size(); ++n)
        acc += m[n] * pi.pi[n];
    return acc;
}

double effective_interference(std::size_t c, const AntennaPolicy &policy, std::span<const StateDistribution> pi,
                              const CouplingGains &gains, double p)
{
    const std::size_t nc = policy.num_cells();
    if (pi.size() != nc || gains.num_cells() != nc)
        throw std::invalid_argument("effective_interference: cell counts differ");
    double acc = 0.0;
    for (std::size_t d = 0; d < nc; ++d)
        if (d != c)
            acc += gains.g_cross[c][d] * p * mean_antennas(policy.cells[d], pi[d]);
    return acc;
}

double state_objective(int n, double antennas, double interference, double own_gain, const SystemParams &params,
                       bool include_rate_term)
{
    const RateContext ctx{own_gain, interference, n, antennas};
    const double rate = avg_user_rate(ctx, params);
    const auto ap = affine_power(n, params);
    double power = ap.c0 + ap.c1 * antennas;
    if (include_rate_term)
        power += params.coding_power_per_bps() * n * rate;
    return n * rate / power;
}

std::vector<double> objective_sweep(int n, double interference, double own_gain, const SystemParams &params, int m_max,
                                    bool include_rate_term)
{
    std::vector<double> out;
    for (int m = n + 1; m <= m_max; ++m)
        out.push_back(state_objective(n, m, interference, own_gain, params, include_rate_term));
    return out;
}

namespace
{

void check_state(int n, int m_max, const SystemParams &params)
{
    if (n < 1 || n > params.k_max)
        throw std::invalid_argument("best_response_state: users must lie in [1, K_max]");
    if (m_max < n + 1)
        throw std::invalid_argument("best_response_state: M_max must exceed the number of users");
}

int exhaustive_argmax(int n, double interference, double own_gain, const SystemParams &params, int m_max)
{
    int best = n + 1;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int m = n + 1; m <= m_max; ++m)
    {
        const double v = state_objective(n, m, interference, own_gain, params);
        if (v > best_val)
        {
            best_val = v;
            best = m;
        }
    }
    return best;
}

// Sign of d/dM [ln(1 + g (M^2 - n M)) / (C0 + C1 M)], scaled by the positive denominator.
struct StationaryFunction
{
    double gamma, n, c0, c1;

    double operator()(double m) const
    {
        const double arg = 1.0 + gamma * (m * m - n * m);
        return gamma * (2.0 * m - n) / arg * (c0 + c1 * m) - std::log(arg) * c1;
    }
};

int stationary_argmax(int n, double interference, double own_gain, const SystemParams &params, int m_max)
{
    const RateContext ctx{own_gain, interference, n, static_cast<double>(n)};
    const auto ap = affine_power(n, params);
    const StationaryFunction h{sinr_single_antenna(ctx, params), static_cast<double>(n), ap.c0, ap.c1};

    double lo = n + 1.0;
    double hi = m_max;
    double stationary;
    if (h(hi) >= 0.0)
        stationary = hi;
    else if (h(lo) <= 0.0)
        stationary = lo;
    else
    {
        for (int it = 0; it < 200 && hi - lo > 1e-9; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            (h(mid) > 0.0 ? lo : hi) = mid;
        }
        stationary = 0.5 * (lo + hi);
    }
    if (!std::isfinite(stationary))
        return exhaustive_argmax(n, interference, own_gain, params, m_max);

    const int fl = static_cast<int>(std::floor(stationary));
    std::vector<int> candidates{n + 1, fl - 1, fl, fl + 1, fl + 2, m_max};
    std::sort(candidates.begin(), candidates.end());
    int best = n + 1;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int m : candidates)
    {
        if (m < n + 1 || m > m_max)
            continue;
        const double v = state_objective(n, m, interference, own_gain, params);
        if (v > best_val)
        {
            best_val = v;
            best = m;
        }
    }
    return best;
}

} // namespace

int best_response_state(int n, double interference, double own_gain, const SystemParams &params, int m_max,
                        BestResponseSearch search)
{
    check_state(n, m_max, params);
    if (search == BestResponseSearch::kExhaustive)
        return exhaustive_argmax(n, interference, own_gain, params, m_max);
    return stationary_argmax(n, interference, own_gain, params, m_max);
}

AntennaVector best_response_cell(double interference, double own_gain, const SystemParams &params, int m_max,
                                 BestResponseSearch search)
{
    AntennaVector out(static_cast<std::size_t>(params.k_max) + 1, 0);
    for (int n = 1; n <= params.k_max; ++n)
        out[n] = best_response_state(n, interference, own_gain, params, m_max, search);
    return out;
}

GameState run_game(const CouplingGains &gains, std::vector<StateDistribution> pi, const SystemParams &params,
                   const GameConfig &config, std::optional<AntennaPolicy> initial)
{
    const std::size_t nc = gains.num_cells();
    const std::size_t states = static_cast<std::size_t>(params.k_max) + 1;
    if (pi.size() != nc)
        throw std::invalid_argument("run_game: one state distribution per cell is required");
    for (const auto &d : pi)
        if (d.pi.size() != states)
            throw std::invalid_argument("run_game: state distributions must cover 0..K_max");
    if (config.m_max < params.k_max + 1)
        throw std::invalid_argument("run_game: M_max must exceed K_max");
    if (config.max_sweeps < 1)
        throw std::invalid_argument("run_game: max_sweeps must be positive");
    if (!config.active.empty() && config.active.size() != nc)
        throw std::invalid_argument("run_game: active mask size differs from the cell count");

    GameState state;
    state.policy = initial ? std::move(*initial) : AntennaPolicy::uniform(nc, params.k_max, config.m_max);
    if (state.policy.num_cells() != nc || !state.policy.feasible(config.m_max))
        throw std::invalid_argument("run_game: initial policy is infeasible");
    for (const auto &v : state.policy.cells)
        if (v.size() != states)
            throw std::invalid_argument("run_game: initial policy must cover 0..K_max");
    state.pi = std::move(pi);

    for (int sweep = 0; sweep < config.max_sweeps; ++sweep)
    {
        SweepRecord rec;
        rec.tol.assign(nc, 0);
        for (std::size_t c = 0; c < nc; ++c)
        {
            if (!config.active.empty() && !config.active[c])
                continue;
            const double interference =
                effective_interference(c, state.policy, state.pi, gains, params.antenna_power_w);
            auto br = best_response_cell(interference, gains.g_own[c], params, config.m_max, config.search);
            for (std::size_t n = 1; n < states; ++n)
                rec.tol[c] += br[n] != state.policy.cells[c][n];
            state.policy.cells[c] = std::move(br);
        }
        rec.maxtol = *std::max_element(rec.tol.begin(), rec.tol.end());
        rec.policy = state.policy;
        state.trace.push_back(std::move(rec));
        if (state.trace.back().maxtol == 0)
            return state;
    }
    throw std::runtime_error("run_game: no convergence within " + std::to_string(config.max_sweeps) + " sweeps");
}

bool trace_non_increasing(const GameState &state)
{
    for (std::size_t s = 1; s < state.trace.size(); ++s)
    {
        const auto &prev = state.trace[s - 1].policy.cells;
        const auto &cur = state.trace[s].policy.cells;
        for (std::size_t c = 0; c < cur.size(); ++c)
            for (std::size_t n = 0; n < cur[c].size(); ++n)
                if (cur[c][n] > prev[c][n])
                    return false;
    }
    return true;
}

NashCertificate verify_nash(const GameState &state, const CouplingGains &gains, const SystemParams &params, int m_max,
                            double rel_threshold)
{
    NashCertificate cert;
    for (std::size_t c = 0; c < state.policy.num_cells(); ++c)
    {
        const double interference =
            effective_interference(c, state.policy, state.pi, gains, params.antenna_power_w);
        for (int n = 1; n <= params.k_max; ++n)
        {
            const double current = state_objective(n, state.policy.cells[c][n], interference, gains.g_own[c], params);
            const auto sweep = objective_sweep(n, interference, gains.g_own[c], params, m_max);
            const double best = *std::max_element(sweep.begin(), sweep.end());
            const double gain = (best - current) / current;
            if (gain > cert.worst_relative_gain)
            {
                cert.worst_relative_gain = gain;
                cert.cell = c;
                cert.state = n;
            }
        }
    }
    cert.holds = cert.worst_relative_gain <= rel_threshold;
    return cert;
}

IncreasingDifferencesResult increasing_differences_check(int n, std::span<const int> own_antennas,
                                                         std::span<const double> opponent_antennas,
                                                         const std::function<double(double)> &interference_of,
                                                         double own_gain, const SystemParams &params, double tolerance)
{
    std::vector<int> xs(own_antennas.begin(), own_antennas.end());
    std::vector<double> ys(opponent_antennas.begin(), opponent_antennas.end());
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    for (int x : xs)
        if (x <= n)
            throw std::invalid_argument("increasing_differences_check: own antennas must exceed the users");

    const auto ap = affine_power(n, params);
    // f[i][j] = F(xs[i], ys[j])
    std::vector<std::vector<double>> f(xs.size(), std::vector<double>(ys.size()));
    for (std::size_t j = 0; j < ys.size(); ++j)
    {
        const double interference = interference_of(ys[j]);
        for (std::size_t i = 0; i < xs.size(); ++i)
        {
            const RateContext ctx{own_gain, interference, n, static_cast<double>(xs[i])};
            f[i][j] = std::log(avg_user_rate(ctx, params)) - std::log(ap.c0 + ap.c1 * xs[i]);
        }
    }

    IncreasingDifferencesResult res;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t k = i + 1; k < xs.size(); ++k)
        {
            double running = -std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < ys.size(); ++j)
            {
                const double diff = f[k][j] - f[i][j];
                if (j > 0)
                    res.worst_margin = std::min(res.worst_margin, diff - running);
                running = std::max(running, diff);
            }
        }
    res.holds = res.worst_margin >= -tolerance;
    return res;
}

bool is_unimodal(std::span<const double> values)
{
    std::size_t i = 1;
    while (i < values.size() && values[i] >= values[i - 1])
        ++i;
    while (i < values.size() && values[i] <= values[i - 1])
        ++i;
    return i >= values.size();
}

nlohmann::json to_json(const AntennaPolicy &policy) { return {{"cells", policy.cells}}; }

AntennaPolicy policy_from_json(const nlohmann::json &j)
{
    if (!j.contains("cells") || !j.at("cells").is_array())
        throw std::invalid_argument("policy_from_json: missing \"cells\" array");
    AntennaPolicy p;
    p.cells = j.at("cells").get<std::vector<AntennaVector>>();
    return p;
}

} // namespace mmee
