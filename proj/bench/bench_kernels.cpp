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

// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "mmee/experiment.hpp"

namespace
{

using namespace mmee;

const NetworkLayout &layout()
{
    static const auto l = build_layout(19, 500.0, 35.0, 15000);
    return l;
}

const SymmetricNetwork &network()
{
    static const auto n = SymmetricNetwork::from_gains(compute_coupling(layout(), default_path_loss()), 500.0);
    return n;
}

RunConfig daily_config()
{
    static const auto design = dimension(default_config());
    RunConfig cfg;
    cfg.sim = default_config();
    cfg.profile = load_load_profile(std::string(MMEE_DATA_DIR) + "/profiles/europe_24.csv");
    cfg.design = design;
    return cfg;
}

DimensioningConfig small_grid()
{
    DimensioningConfig cfg;
    cfg.k_cap = 64;
    cfg.m_cap = 200;
    return cfg;
}

void BM_CouplingParallel(benchmark::State &state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(compute_coupling(layout(), default_path_loss()));
}

void BM_CouplingSerial(benchmark::State &state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::compute_coupling(layout(), default_path_loss()));
}

void BM_DimensionParallel(benchmark::State &state)
{
    const auto params = default_params();
    for (auto _ : state)
        benchmark::DoNotOptimize(dimension_reference(network(), params, small_grid()));
}

void BM_DimensionSerial(benchmark::State &state)
{
    const auto params = default_params();
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::dimension_reference(network(), params, small_grid()));
}

void BM_DailyParallel(benchmark::State &state)
{
    const auto cfg = daily_config();
    for (auto _ : state)
        benchmark::DoNotOptimize(run_daily(cfg));
}

void BM_DailySerial(benchmark::State &state)
{
    const auto cfg = daily_config();
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::run_daily(cfg));
}

} // namespace

BENCHMARK(BM_CouplingParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CouplingSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DimensionParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DimensionSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DailyParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DailySerial)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
