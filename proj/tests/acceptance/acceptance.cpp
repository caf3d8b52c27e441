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

// Acceptance checks. Prints one "criterion N: PASS|FAIL ..." line per criterion and exits
// non-zero when any selected criterion fails. `--only N` restricts the run to one criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "mmee/experiment.hpp"
#include "mmee/game.hpp"
#include "mmee/rate_model.hpp"
#include "mmee/report_io.hpp"
#include "support/oracles.hpp"

using namespace mmee;

namespace
{

struct Outcome
{
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

bool within(double v, double centre, double tol) { return std::abs(v - centre) <= tol; }

std::string profile_path(const std::string &name) { return std::string(MMEE_DATA_DIR) + "/profiles/" + name; }

SimulationConfig sim_for(PaKind kind, double radius = 500.0)
{
    auto sim = default_config(kind);
    sim.cell_radius_m = radius;
    return sim;
}

RunConfig run_for(PaKind kind, const std::string &profile, std::optional<ReferenceDesign> design = std::nullopt)
{
    RunConfig cfg;
    cfg.sim = sim_for(kind);
    cfg.profile = load_load_profile(profile_path(profile));
    cfg.design = std::move(design);
    return cfg;
}

const DailyReport &residential_tpa()
{
    static const DailyReport r = run_daily(run_for(PaKind::kTpa, "residential_120.csv"));
    return r;
}

Outcome dimensioning_band(PaKind kind, double k, double dk, double m, double dm, double p, double dp,
                          double max_seconds)
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto d = dimension(sim_for(kind));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = within(d.k_max, k, dk) && within(d.m_max, m, dm) && within(d.p_opt, p, dp) && secs <= max_seconds;
    return {ok, fmt("%s K_max=%d (want %g+-%g) M_max=%d (want %g+-%g) p=%.4f W (want %g+-%g) in %.1f s",
                    to_string(kind).c_str(), d.k_max, k, dk, d.m_max, m, dm, d.p_opt, p, dp, secs)};
}

Outcome criterion_1() { return dimensioning_band(PaKind::kTpa, 76, 8, 158, 16, 0.10, 0.02, 600.0); }

Outcome criterion_2() { return dimensioning_band(PaKind::kEtPa, 68, 7, 134, 14, 0.18, 0.04, 600.0); }

Outcome criterion_3()
{
    const std::vector<double> radii{1000.0, 500.0, 250.0};
    const std::vector<double> tpa_m{283.0, 158.0, 107.0};
    bool trend = true, band = true;
    std::string detail;
    for (auto kind : {PaKind::kTpa, PaKind::kEtPa})
    {
        std::vector<ReferenceDesign> ds;
        for (double r : radii)
            ds.push_back(dimension(sim_for(kind, r)));
        detail += to_string(kind) + ":";
        for (std::size_t i = 0; i < ds.size(); ++i)
        {
            detail += fmt(" r=%g (K=%d M=%d p=%.4f)", radii[i], ds[i].k_max, ds[i].m_max, ds[i].p_opt);
            if (i > 0)
                trend = trend && ds[i].m_max < ds[i - 1].m_max && ds[i].k_max < ds[i - 1].k_max &&
                        ds[i].p_opt < ds[i - 1].p_opt;
            if (kind == PaKind::kTpa)
                band = band && std::abs(ds[i].m_max - tpa_m[i]) <= 0.1 * tpa_m[i];
        }
        detail += "; ";
    }
    detail += fmt("strictly decreasing=%s, TPA M within 10%% of {283,158,107}=%s", trend ? "yes" : "no",
                  band ? "yes" : "no");
    return {trend && band, detail};
}

Outcome criterion_4()
{
    const auto &r = residential_tpa();
    const auto &a = r.aggregates;
    int violations = 0;
    for (const auto &x : r.intervals)
        for (const auto &y : r.intervals)
            if (y.load_fraction - x.load_fraction >= 0.2 && !(x.ee_gain() > y.ee_gain()))
                ++violations;
    const bool ok = within(a.ee_gain, 0.24, 0.05) && within(a.energy_saving, 0.40, 0.05) &&
                    within(-a.rate_change, 0.12, 0.05) && violations == 0;
    return {ok, fmt("EE gain %.1f%% (want 24+-5), saving %.1f%% (want 40+-5), rate reduction %.1f%% (want 12+-5), "
                    "shape violations %d",
                    100 * a.ee_gain, 100 * a.energy_saving, -100 * a.rate_change, violations)};
}

Outcome criterion_5()
{
    const auto &r = residential_tpa();
    int count = 0;
    double worst = INFINITY;
    for (const auto &row : r.intervals)
        if (row.load_fraction >= 0.1 - 1e-12 && row.load_fraction <= 0.15 + 1e-12)
        {
            ++count;
            worst = std::min(worst, row.ee_gain());
        }
    return {count > 0 && worst >= 1.5,
            fmt("%d intervals at load 0.10-0.15, smallest EE gain %.1f%% (want >= 150)", count, 100 * worst)};
}

Outcome criterion_6()
{
    double worst_erlang = 0.0;
    for (int m = 1; m <= 20; ++m)
        for (double offered : {0.05, 0.5, 1.0, 3.0, 7.5, 15.0, 40.0})
        {
            QueueModel q;
            q.servers = m;
            q.per_user_bits = 1e8;
            q.rates.assign(m, 2.5e7);
            q.arrival_rate = offered * 2.5e7 / 1e8;
            const auto pi = steady_state(q);
            const auto oracle = test::erlang_distribution(m, offered);
            worst_erlang = std::max(worst_erlang, test::rel_err(pi.blocking(), test::erlang_b(m, offered)));
            for (int n = 0; n <= m; ++n)
                worst_erlang = std::max(worst_erlang, test::rel_err(pi.pi[n], oracle[n]));
        }

    const auto sim = sim_for(PaKind::kTpa);
    const auto d = dimension(sim);
    const double lambda = calibrate_reference_lambda(d, sim.params, sim.per_user_bits, sim.target_blocking);
    auto q = reference_queue(d, sim.params, sim.per_user_bits);
    q.arrival_rate = lambda;
    const auto pi = steady_state(q);
    double worst_sum = 0.0;
    const auto profile = load_load_profile(profile_path("residential_120.csv"));
    for (std::size_t h = 0; h < profile.size(); ++h)
    {
        const auto ph = interval_distribution(profile, h, lambda, q);
        double s = 0.0;
        for (double v : ph.pi)
            s += v;
        worst_sum = std::max(worst_sum, std::abs(s - 1.0));
    }
    const bool ok = worst_erlang <= 1e-10 && std::abs(pi.blocking() - 0.02) <= 1e-6 && worst_sum <= 1e-12;
    return {ok, fmt("Erlang-B max rel err %.2e (want <= 1e-10), pi(K_max)=%.9f (want 0.02+-1e-6), "
                    "max |sum pi - 1| %.2e (want <= 1e-12)",
                    worst_erlang, pi.blocking(), worst_sum)};
}

Outcome criterion_7()
{
    auto params = default_params();
    params.noise_power_w = 0.05;
    params.antenna_power_w = 0.1;
    params.k_max = 4;
    std::vector<OracleInstance> instances;
    for (int n = 1; n <= 4; ++n)
        for (int m = n + 1; m <= 16; ++m)
            for (int k = 0; k <= 2; ++k)
            {
                OracleInstance inst{n, m, 1.0, {}};
                if (k >= 1)
                    inst.interferers.push_back({16, 4, 0.3});
                if (k >= 2)
                    inst.interferers.push_back({m, n, 0.05});
                instances.push_back(inst);
            }
    const long count = static_cast<long>(instances.size());
    std::vector<double> z(instances.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i)
    {
        const auto mc = monte_carlo_rate_oracle(instances[i], params, 100000, static_cast<std::uint64_t>(i) + 1);
        z[i] = (bound_rate(instances[i], params) - mc.mean_rate) / mc.std_error;
    }
    const auto violations = std::count_if(z.begin(), z.end(), [](double v) { return v > 3.0; });
    const double worst_z = *std::max_element(z.begin(), z.end());
    return {violations == 0, fmt("%ld instances at 1e5 trials, %ld above MC + 3 SE, worst (bound - MC)/SE = %.2f",
                                 count, static_cast<long>(violations), worst_z)};
}

Outcome criterion_8()
{
    bool a_ok = true, b_ok = true, c_ok = true, d_ok = true, e_ok = true;
    double worst_margin = 0.0;
    int sweeps_max = 0, instances = 0;
    for (auto kind : {PaKind::kTpa, PaKind::kEtPa})
    {
        const auto sim = sim_for(kind);
        const auto design = dimension(sim);
        const auto params = design_params(sim.params, design);
        const double unit = design.p_opt * design.cross_sum;

        std::vector<int> xs;
        std::vector<double> ys;
        for (int y = 0; y <= design.m_max; ++y)
            ys.push_back(y);
        for (int n = 1; n <= design.k_max; ++n)
        {
            xs.clear();
            for (int x = n + 1; x <= design.m_max; ++x)
                xs.push_back(x);
            const auto res = increasing_differences_check(
                n, xs, ys, [unit](double y) { return unit * y; }, design.own_gain, params);
            worst_margin = std::min(worst_margin, res.worst_margin);
            a_ok = a_ok && res.worst_margin >= -1e-9;

            for (double scale : {0.0, 0.1, 0.5, 1.0, 2.0})
            {
                const double interference = unit * design.m_max * scale;
                const auto lean = objective_sweep(n, interference, design.own_gain, params, design.m_max, false);
                const auto full = objective_sweep(n, interference, design.own_gain, params, design.m_max, true);
                b_ok = b_ok && is_unimodal(lean) && is_unimodal(full);
                const auto arg = [](const std::vector<double> &v) {
                    return std::max_element(v.begin(), v.end()) - v.begin();
                };
                d_ok = d_ok && arg(lean) == arg(full);
                ++instances;
            }
        }

        for (const char *profile : {"residential_120.csv", "europe_24.csv", "constant_peak_24.csv"})
        {
            const auto r = run_daily(run_for(kind, profile, design));
            for (std::size_t h = 0; h < r.intervals.size(); ++h)
            {
                c_ok = c_ok && r.intervals[h].nash_certified;
                e_ok = e_ok && r.monotone_traces[h] && r.intervals[h].game_sweeps <= 1000;
                sweeps_max = std::max(sweeps_max, r.intervals[h].game_sweeps);
            }
        }
    }
    const auto yn = [](bool b) { return b ? "ok" : "FAIL"; };
    return {a_ok && b_ok && c_ok && d_ok && e_ok,
            fmt("(a) increasing differences %s, worst margin %.2e; (b) unimodal %s; (c) Nash %s; "
                "(d) coding-term argmax invariance %s over %d sweeps; (e) convergence %s, at most %d sweeps",
                yn(a_ok), worst_margin, yn(b_ok), yn(c_ok), yn(d_ok), instances, yn(e_ok), sweeps_max)};
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome criterion_9()
{
    const auto base = std::filesystem::temp_directory_path() / "mmee_acceptance_determinism";
    std::filesystem::remove_all(base);
    const auto cfg = run_for(PaKind::kTpa, "residential_120.csv");
    emit(run_daily(cfg), base / "a");
    emit(run_daily(cfg), base / "b");
    const auto a = slurp(base / "a" / "summary.json");
    const auto b = slurp(base / "b" / "summary.json");
    std::filesystem::remove_all(base);
    return {!a.empty() && a == b, fmt("summary.json %zu bytes, identical=%s", a.size(), a == b ? "yes" : "no")};
}

} // namespace

int main(int argc, char **argv)
{
    const std::map<int, std::function<Outcome()>> criteria{
        {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4}, {5, criterion_5},
        {6, criterion_6}, {7, criterion_7}, {8, criterion_8}, {9, criterion_9},
    };
    int only = 0;
    for (int i = 1; i < argc; ++i)
    {
        const std::string arg = argv[i];
        if (arg == "--only" && i + 1 < argc)
            only = std::stoi(argv[++i]);
        else
        {
            std::cerr << "usage: mmee_acceptance [--only N]\n";
            return 2;
        }
    }
    if (only != 0 && !criteria.contains(only))
    {
        std::cerr << "unknown criterion " << only << "\n";
        return 2;
    }

    bool all = true;
    for (const auto &[id, check] : criteria)
    {
        if (only != 0 && id != only)
            continue;
        Outcome out;
        try
        {
            out = check();
        }
        catch (const std::exception &e)
        {
            out = {false, std::string("error: ") + e.what()};
        }
        std::cout << "criterion " << id << ": " << (out.pass ? "PASS" : "FAIL") << " " << out.detail << std::endl;
        all = all && out.pass;
    }
    return all ? 0 : 1;
}
