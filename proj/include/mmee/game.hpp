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

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmee/geometry.hpp"
#include "mmee/params.hpp"
#include "mmee/traffic.hpp"

namespace mmee
{

// Antenna count per user state; entry n is M_c(n) for n = 0..K_max and entry 0 is always 0.
using AntennaVector = std::vector<int>;

struct AntennaPolicy
{
    std::vector<AntennaVector> cells;

    static AntennaPolicy uniform(std::size_t num_cells, int k_max, int m_max);

    std::size_t num_cells() const { return cells.size(); }
    // Feasible when M(0) = 0 and n + 1 <= M(n) <= m_max.
    bool feasible(int m_max) const;
    bool operator==(const AntennaPolicy &) const = default;
};

// Weighted mean sum_n M(n) pi(n).
double mean_antennas(const AntennaVector &m, const StateDistribution &pi);

// I_c = sum_{d != c} G_cd p Mbar_d
double effective_interference(std::size_t c, const AntennaPolicy &policy, std::span<const StateDistribution> pi,
                              const CouplingGains &gains, double p);

// Per-state utility n R(n, M, I) / P(n, M). The coding term A n R is left out of the denominator unless
// `include_rate_term` is set; it does not move the argmax.
double state_objective(int n, double antennas, double interference, double own_gain, const SystemParams &params,
                       bool include_rate_term = false);

// Objective for M = n+1 .. m_max (index 0 corresponds to M = n+1).
std::vector<double> objective_sweep(int n, double interference, double own_gain, const SystemParams &params, int m_max,
                                    bool include_rate_term = false);

enum class BestResponseSearch
{
    kStationary, // continuous stationary point, then the neighbouring integers and both ends
    kExhaustive, // every integer in [n+1, m_max]
};

// Most energy-efficient antenna count for n users under interference I; ties go to the smaller count.
int best_response_state(int n, double interference, double own_gain, const SystemParams &params, int m_max,
                        BestResponseSearch search = BestResponseSearch::kStationary);

AntennaVector best_response_cell(double interference, double own_gain, const SystemParams &params, int m_max,
                                 BestResponseSearch search = BestResponseSearch::kStationary);

struct SweepRecord
{
    int maxtol = 0;
    std::vector<int> tol; // changed entries per cell
    AntennaPolicy policy; // after the sweep
};

struct GameState
{
    AntennaPolicy policy;
    std::vector<StateDistribution> pi;
    std::vector<SweepRecord> trace;

    std::size_t sweeps() const { return trace.size(); }
};

struct GameConfig
{
    int m_max = 0;
    int max_sweeps = 1000;
    BestResponseSearch search = BestResponseSearch::kStationary;
    // Cells that update their strategy; empty means all. Other cells keep their initial policy.
    std::vector<bool> active;
};

// Best-response iteration with in-place (Gauss-Seidel) updates in ascending cell order until a full sweep
// changes no entry. Starts from `initial`, or from M_max everywhere. Throws std::runtime_error when
// `max_sweeps` is exceeded.
GameState run_game(const CouplingGains &gains, std::vector<StateDistribution> pi, const SystemParams &params,
                   const GameConfig &config, std::optional<AntennaPolicy> initial = std::nullopt);

struct NashCertificate
{
    bool holds = true;
    double worst_relative_gain = 0.0; // best unilateral improvement found
    std::size_t cell = 0;
    int state = 0;
};

// True when every entry of every cell is non-increasing from one sweep to the next.
bool trace_non_increasing(const GameState &state);

// Exhaustive check that no cell can strictly improve any state by more than `rel_threshold`.
NashCertificate verify_nash(const GameState &state, const CouplingGains &gains, const SystemParams &params, int m_max,
                            double rel_threshold = 1e-12);

struct IncreasingDifferencesResult
{
    bool holds = true;
    double worst_margin = 0.0;
};

// Checks F(x',y') - F(x,y') >= F(x',y) - F(x,y) for all grid points x <= x', y <= y', with
// F(x, y) = log R(n, x, I(y)) - log P(n, x). `interference_of` maps the opponents' antennas to I.
// Own antenna counts must be feasible (> n).
IncreasingDifferencesResult increasing_differences_check(int n, std::span<const int> own_antennas,
                                                         std::span<const double> opponent_antennas,
                                                         const std::function<double(double)> &interference_of,
                                                         double own_gain, const SystemParams &params,
                                                         double tolerance = 1e-9);

// Single local maximum: non-decreasing then non-increasing.
bool is_unimodal(std::span<const double> values);

nlohmann::json to_json(const AntennaPolicy &policy);
AntennaPolicy policy_from_json(const nlohmann::json &j);

} // namespace mmee
