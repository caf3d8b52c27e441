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
#include <vector>

#include <nlohmann/json.hpp>

#include "mmee/geometry.hpp"
#include "mmee/params.hpp"
#include "mmee/power_model.hpp"
#include "mmee/traffic.hpp"

namespace mmee
{

// One cell of a network in which every cell runs the same (K, M, p) at full activity.
// The interference is then p * M * cross_sum.
struct SymmetricNetwork
{
    double own_gain = 0.0;  // G_cc
    double cross_sum = 0.0; // sum_{d != c} G_cd
    double cell_radius = 0.0;

    static SymmetricNetwork from_gains(const CouplingGains &gains, double cell_radius);
};

struct DimensioningConfig
{
    int k_cap = 256;
    int m_cap = 512;
    double p_min = 1e-4;          // W
    double p_max = 2.0;           // W, further limited by the PA back-off when P_max,PA is fixed
    int tpa_grid_points = 1024;   // logarithmic grid before golden-section refinement
    double golden_tolerance = 1e-6; // W
    std::optional<double> fixed_p;  // pins p instead of optimising it

    void validate() const;
};

// Peak-load EE K R / P(K, M, p) of the symmetric network in bit/J, coding term included.
// `params.k_max` is replaced by K.
double symmetric_ee(int users, int antennas, double p, const SymmetricNetwork &net, const SystemParams &params);

struct PowerOptimum
{
    double p = 0.0;
    double ee = 0.0;
};

// Transmit power per antenna maximising symmetric_ee for fixed (K, M).
// ET-PA: golden-section search. TPA: logarithmic grid, then golden-section around the best grid point.
// Returns the pinned value when `config.fixed_p` is set.
PowerOptimum optimize_p(int users, int antennas, const SymmetricNetwork &net, const SystemParams &params,
                        const DimensioningConfig &config = {});

struct ReferenceDesign
{
    int k_max = 0;
    int m_max = 0;
    double p_opt = 0.0;
    double peak_ee = 0.0;   // bit/J
    double peak_rate = 0.0; // bit/s per user at K_max users
    PaKind pa_kind = PaKind::kTpa;
    double cell_radius = 0.0;
    double own_gain = 0.0;
    double cross_sum = 0.0;

    SymmetricNetwork network() const { return {own_gain, cross_sum, cell_radius}; }
    void validate() const;
};

// `params` with K_max and p taken from the design.
SystemParams design_params(const SystemParams &base, const ReferenceDesign &design);

// Exhaustive (K, M) search with optimize_p inside; OpenMP over K. Ties go to the smaller K, then M.
ReferenceDesign dimension_reference(const SymmetricNetwork &net, const SystemParams &params,
                                    const DimensioningConfig &config = {});

namespace reference
{
ReferenceDesign dimension_reference(const SymmetricNetwork &net, const SystemParams &params,
                                    const DimensioningConfig &config = {});
} // namespace reference

// Largest relative EE improvement over the design among its eight (K, M) neighbours, with p re-optimised.
// Non-positive for a local optimum.
double local_optimality_margin(const ReferenceDesign &design, const SystemParams &params,
                               const DimensioningConfig &config = {});

// Per-user rates R(n), n = 1..K_max, of the reference BS with M_max antennas when every neighbour
// is active with probability `activity`.
std::vector<double> reference_rates(const ReferenceDesign &design, const SystemParams &params, double activity);

// Queue template of the reference BS at full activity, arrival rate unset.
QueueModel reference_queue(const ReferenceDesign &design, const SystemParams &params, double per_user_bits);

// Arrival rate at which the reference BS blocks `target_blocking` of the users at full activity.
double calibrate_reference_lambda(const ReferenceDesign &design, const SystemParams &params, double per_user_bits,
                                  double target_blocking = 0.02);

struct ActivityOptions
{
    double tolerance = 1e-8;
    int max_iterations = 500;
    double initial_activity = 1.0;
    bool always_damp = false; // damp from the first step instead of only after an oscillation
    IdleAccounting accounting = IdleAccounting::kIdleOff;
};

struct ActivitySolution
{
    double activity = 1.0;
    double reference_ee = 0.0;   // sum_n pi(n) n R(n) / P(n), bit/J
    double reference_rate = 0.0; // user-weighted mean rate, bit/s
    double mean_power = 0.0;     // W
    double mean_antennas = 0.0;
    StateDistribution pi;
    std::vector<double> rates; // rates[n-1] = R(n)
    int iterations = 0;
};

// a -> 1 - pi(0) for arrival rate `lambda` when interference scales with a.
double activity_map(double activity, const ReferenceDesign &design, const SystemParams &params, double lambda,
                    double per_user_bits);

// Activity fixed point of the reference network in an interval with the given load fraction.
// Load fraction 1 returns a = 1 without iterating. Throws std::runtime_error without convergence.
ActivitySolution reference_activity_fixed_point(const ReferenceDesign &design, const SystemParams &params,
                                                double load_fraction, double lambda_max, double per_user_bits,
                                                const ActivityOptions &options = {});

nlohmann::json to_json(const ReferenceDesign &design);
ReferenceDesign design_from_json(const nlohmann::json &j);

} // namespace mmee
