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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "mmee/rate_model.hpp"
#include "support/oracles.hpp"

using namespace mmee;
using Catch::Approx;

namespace
{

// Params whose noise term equals `denom` when G_cc = 1 and I = 0.
SystemParams unit_params(double denom)
{
    auto p = default_params();
    p.noise_power_w = denom;
    return p;
}

} // namespace

TEST_CASE("rate is zero without spare antennas", "[rate]")
{
    const auto params = default_params();
    for (int n : {1, 5, 76})
        CHECK(avg_user_rate({1e13, 0.3, n, static_cast<double>(n)}, params) == 0.0);
}

TEST_CASE("single user with unit SINR", "[rate]")
{
    const auto params = unit_params(0.2);
    const double r = avg_user_rate({1.0, 0.0, 1, 2.0}, params);
    CHECK(r == Approx(20e6 * (1.0 - 7.0 * 76.0 / 5000.0)).epsilon(1e-14));
    CHECK(r == Approx(17.872e6).epsilon(1e-12));
    // the same denominator split between noise and interference
    const auto params2 = unit_params(0.05);
    CHECK(avg_user_rate({1.0, 0.15, 1, 2.0}, params2) == Approx(17.872e6).epsilon(1e-12));
}

TEST_CASE("single-antenna SINR", "[rate]")
{
    CHECK(sinr_single_antenna({1.0, 0.0, 1, 2.0}, unit_params(0.2)) == Approx(0.5).epsilon(1e-15));
    CHECK(sinr_single_antenna({1.0, 0.0, 2, 4.0}, unit_params(0.1)) == Approx(0.5).epsilon(1e-15));
}

TEST_CASE("rate matches the independent formula and the SINR identity", "[rate][property]")
{
    test::for_all(2000, 11, [](test::Gen &g, int) {
        auto params = default_params();
        params.antenna_power_w = g.log_uniform(1e-3, 1.0);
        params.k_max = g.integer(1, 200);
        const int n = g.integer(1, params.k_max);
        const double m = n + g.uniform(0.0, 400.0);
        const double own = g.log_uniform(1e9, 1e17);
        const double interference = g.coin() ? 0.0 : g.log_uniform(1e-4, 1e3);
        const RateContext ctx{own, interference, n, m};
        const double r = avg_user_rate(ctx, params);
        const double denom = params.noise_power_w * own + interference;
        const double oracle = test::rate_formula(params.bandwidth_hz, params.pilot_reuse, params.k_max,
                                                 params.coherence_symbols, params.antenna_power_w, n, m, denom);
        REQUIRE(test::rel_err(r, oracle) <= 1e-12);
        const double gamma = sinr_single_antenna(ctx, params);
        // the literal form rounds 1 - n M gamma + gamma M^2 to one ulp of 1
        const double ulp_floor = 4.0 * std::numeric_limits<double>::epsilon() * params.pre_log_factor();
        REQUIRE(std::abs(rate_from_single_antenna_sinr(gamma, n, m, params) - r) <= 1e-12 * r + ulp_floor);
    });
}

TEST_CASE("rate grows with M and p and falls with interference", "[rate][property]")
{
    test::for_all(1000, 12, [](test::Gen &g, int) {
        auto params = default_params();
        const int n = g.integer(1, 76);
        const double m = n + g.integer(0, 300);
        const double own = g.log_uniform(1e11, 1e15);
        const double interference = g.log_uniform(1e-3, 10.0);
        const double r = avg_user_rate({own, interference, n, m}, params);
        REQUIRE(avg_user_rate({own, interference, n, m + 1}, params) > r);
        REQUIRE(avg_user_rate({own, interference * 1.1, n, m + 1}, params) <
                avg_user_rate({own, interference, n, m + 1}, params));
        auto louder = params;
        louder.antenna_power_w *= 1.5;
        REQUIRE(avg_user_rate({own, interference, n, m + 1}, louder) >
                avg_user_rate({own, interference, n, m + 1}, params));
    });
}

TEST_CASE("pilot overhead scales the rate linearly", "[rate]")
{
    auto a = default_params();
    auto b = a;
    b.coherence_symbols *= 2.0;
    const RateContext ctx{1e13, 0.5, 10, 40.0};
    const double ratio = b.overhead_factor() / a.overhead_factor();
    CHECK(avg_user_rate(ctx, b) == Approx(avg_user_rate(ctx, a) * ratio).epsilon(1e-14));
    CHECK(b.overhead_factor() == Approx(1.0 - 7.0 * 76.0 / 10000.0).epsilon(1e-15));
}

TEST_CASE("invalid rate contexts are rejected", "[rate]")
{
    const auto params = default_params();
    CHECK_THROWS_AS(avg_user_rate({1.0, 0.0, 0, 4.0}, params), std::invalid_argument);
    CHECK_THROWS_AS(avg_user_rate({1.0, 0.0, 5, 4.0}, params), std::invalid_argument);
    CHECK_THROWS_AS(avg_user_rate({1.0, 0.0, 77, 100.0}, params), std::invalid_argument);
    CHECK_THROWS_AS(avg_user_rate({1.0, -1.0, 1, 4.0}, params), std::invalid_argument);
}

TEST_CASE("ergodic rate of a single user lies above the bound", "[rate][montecarlo]")
{
    auto params = default_params();
    params.noise_power_w = 1.0;
    params.antenna_power_w = 0.1;
    double prev_gap = 1.0;
    for (int m : {4, 16, 64})
    {
        const OracleInstance inst{1, m, 1.0, {}};
        const auto mc = monte_carlo_rate_oracle(inst, params, 20000, 7);
        const double bound = bound_rate(inst, params);
        CHECK(mc.mean_rate + 3.0 * mc.std_error >= bound);
        const double gap = (mc.mean_rate - bound) / mc.mean_rate;
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
}

TEST_CASE("two users, eight antennas, one interferer", "[rate][montecarlo]")
{
    auto params = default_params();
    params.noise_power_w = 0.05;
    params.antenna_power_w = 0.1;
    const OracleInstance inst{2, 8, 1.0, {{8, 2, 0.2}}};
    const auto mc = monte_carlo_rate_oracle(inst, params, 100000, 2024);
    const double bound = bound_rate(inst, params);
    CHECK(mc.trials == 100000);
    CHECK(mc.mean_rate >= bound);
    CHECK((mc.mean_rate - bound) / mc.mean_rate < 0.15);
}

TEST_CASE("the oracle is reproducible from its seed", "[rate][montecarlo]")
{
    const auto params = default_params();
    const OracleInstance inst{2, 5, 1e-12, {{4, 1, 1e-14}}};
    const auto a = monte_carlo_rate_oracle(inst, params, 1, 99);
    const auto b = monte_carlo_rate_oracle(inst, params, 1, 99);
    CHECK(a.mean_rate == b.mean_rate);
    const auto c = monte_carlo_rate_oracle(inst, params, 1, 100);
    CHECK(a.mean_rate != c.mean_rate);
}

TEST_CASE("bound_rate normalises by the own gain", "[rate]")
{
    auto params = unit_params(0.1);
    const OracleInstance inst{1, 2, 2.0, {{3, 1, 0.5}}};
    // G_cc = 0.5, I = p * 3 * 0.25
    const double denom = 0.1 * 0.5 + 0.1 * 3 * 0.25;
    CHECK(bound_rate(inst, params) ==
          Approx(test::rate_formula(20e6, 7.0, 76, 5000.0, 0.1, 1, 2.0, denom)).epsilon(1e-13));
}
