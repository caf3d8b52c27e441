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

#include "mmee/power_model.hpp"
#include "support/oracles.hpp"

using namespace mmee;
using Catch::Approx;

TEST_CASE("traditional PA input power", "[power]")
{
    PaModel pa;
    pa.max_output_w = 0.631;
    CHECK(pa_input_power(0.1, pa) == Approx(std::sqrt(0.1 * 0.631) / 0.8).epsilon(1e-15));
    CHECK(pa_input_power(0.1, pa) == Approx(0.3140).epsilon(2e-4));
    CHECK(pa_input_power(0.0, pa) == 0.0);
}

TEST_CASE("envelope-tracking PA floor", "[power]")
{
    PaModel pa;
    pa.kind = PaKind::kEtPa;
    pa.max_output_w = 1.155;
    CHECK(pa_input_power(0.0, pa) == Approx(0.0082 * 1.155 / (1.0082 * 0.8)).epsilon(1e-15));
    CHECK(pa_input_power(0.0, pa) == Approx(0.01174).epsilon(1e-3));
}

TEST_CASE("default PA headroom is 8 dB above the operating point", "[power]")
{
    PaModel pa;
    CHECK(pa.max_output(0.1) == Approx(0.1 * std::pow(10.0, 0.8)).epsilon(1e-15));
    CHECK(pa_backoff_limit(0.1, pa) == Approx(0.1).epsilon(1e-15));
    CHECK(pa_input_power(0.1, pa) == Approx(std::sqrt(0.1 * 0.1 * std::pow(10.0, 0.8)) / 0.8).epsilon(1e-15));
}

TEST_CASE("output above the back-off limit is rejected", "[power]")
{
    PaModel pa;
    pa.max_output_w = 0.631;
    CHECK_THROWS_AS(pa_input_power(0.2, pa), std::invalid_argument);
    CHECK_THROWS_AS(pa_input_power(-0.01, pa), std::invalid_argument);
}

TEST_CASE("baseband power without users", "[power]")
{
    const auto bb = baseband_power(0, 0, 0.0, default_params());
    CHECK(bb.c0_bb == 2.0);
    CHECK(bb.c1_bb == 1.0);
    CHECK(bb.rate_coding_term == 0.0);
}

TEST_CASE("baseband coefficients", "[power]")
{
    const auto params = default_params();
    const auto bb0 = baseband_power(10, 0, 0.0, params);
    const auto bb1 = baseband_power(10, 1, 0.0, params);
    CHECK(bb1.c0_bb - bb0.c0_bb == Approx(20e6 / (3.0 * 5000.0 * 12.8e9)).epsilon(1e-6));
    CHECK(bb1.c0_bb - bb0.c0_bb == Approx(1.04e-7).epsilon(2e-3));
    const double b_l = 20e6 / 12.8e9;
    const auto bb4 = baseband_power(10, 4, 0.0, params);
    CHECK(bb4.c1_bb == Approx(1.0 + b_l * (2.0 + 1.0 / 5000.0) * 4 + 3.0 * b_l / 5000.0 * 16).epsilon(1e-14));
    CHECK(bb4.c0_bb == Approx(2.0 + b_l / (3.0 * 5000.0) * 64).epsilon(1e-14));
}

TEST_CASE("coding and decoding power", "[power]")
{
    const auto bb = baseband_power(20, 10, 1e8, default_params());
    CHECK(bb.rate_coding_term == Approx(0.9).epsilon(1e-14));
}

TEST_CASE("idle BS draws nothing but reports its coefficients", "[power]")
{
    const auto params = default_params();
    const auto pb = total_power(0, 0, 0.0, params, false);
    CHECK(pb.total == 0.0);
    CHECK(pb.c0 == 20.0);
    CHECK(idle_power(params, IdleAccounting::kIdleOff) == 0.0);
    CHECK(idle_power(params, IdleAccounting::kActiveIdle) == 20.0);
    CHECK(idle_accounting_from_string("active-idle") == IdleAccounting::kActiveIdle);
    CHECK(to_string(IdleAccounting::kIdleOff) == "idle-off");
    CHECK_THROWS_AS(idle_accounting_from_string("sleepy"), std::invalid_argument);
}

TEST_CASE("PA draw at the reference operating point", "[power]")
{
    auto params = default_params();
    params.pa.max_output_w = 0.631;
    const auto pb = total_power(158, 76, 1e7, params, true);
    const double pa_draw = 158 * pa_input_power(0.1, params.pa);
    CHECK(pa_draw == Approx(49.6).epsilon(2e-3));
    CHECK(pb.total == Approx(pb.c0 + pb.c1 * 158 + pb.rate_coding_term).epsilon(1e-14));
    // P_BS is charged per antenna, so baseband and PA draw are of similar size
    CHECK(pb.c1 * 158 > pa_draw);
}

TEST_CASE("total power is affine in the antenna count", "[power][property]")
{
    test::for_all(300, 21, [](test::Gen &g, int) {
        auto params = default_params();
        params.antenna_power_w = g.log_uniform(1e-3, 1.0);
        params.pa.kind = g.coin() ? PaKind::kTpa : PaKind::kEtPa;
        const int n = g.integer(1, 76);
        const double rate = g.log_uniform(1e5, 1e9);
        const bool with_rate = g.coin();
        const int m = g.integer(n + 1, 400);
        const auto p0 = total_power(m, n, rate, params, with_rate);
        const auto p1 = total_power(m + 1, n, rate, params, with_rate);
        const auto p2 = total_power(2 * m, n, rate, params, with_rate);
        REQUIRE(test::rel_err(p1.total - p0.total, p0.c1) <= 1e-12);
        REQUIRE(test::rel_err(p2.total - p0.total, p0.c1 * m) <= 1e-12);
    });
}

TEST_CASE("ET-PA draws no more than TPA and both grow with p", "[power][property]")
{
    test::for_all(500, 22, [](test::Gen &g, int) {
        PaModel tpa, et;
        et.kind = PaKind::kEtPa;
        const double p_max = g.uniform(0.1, 5.0);
        tpa.max_output_w = et.max_output_w = p_max;
        const double limit = pa_backoff_limit(0.0, tpa);
        const double p = g.uniform(0.0, limit);
        const double q = g.uniform(p, limit);
        REQUIRE(pa_input_power(p, et) <= pa_input_power(p, tpa));
        REQUIRE(pa_input_power(q, et) >= pa_input_power(p, et));
        REQUIRE(pa_input_power(q, tpa) >= pa_input_power(p, tpa));
        REQUIRE(pa_input_power(p, et) >= 0.0);
    });
}
