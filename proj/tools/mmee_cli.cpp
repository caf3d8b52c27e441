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

// Command-line front end: dimension, run, sweep and geometry.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmee/config.hpp"
#include "mmee/experiment.hpp"
#include "mmee/report_io.hpp"

namespace
{

struct CommonOptions
{
    std::optional<std::string> pa;
    std::optional<double> radius;
    std::string config_path;
    std::string out = "out";
};

struct RunOptions
{
    std::string profile = std::string(MMEE_DATA_DIR) + "/profiles/residential_120.csv";
    std::string design_path;
    std::string accounting = "idle-off";
    bool joint = false;
};

void add_common(CLI::App *cmd, CommonOptions &o)
{
    cmd->add_option("--pa", o.pa, "power amplifier type")->check(CLI::IsMember({"tpa", "etpa"}));
    cmd->add_option("--radius", o.radius, "cell radius in m")->check(CLI::PositiveNumber);
    cmd->add_option("--config", o.config_path, "JSON configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out, "output directory")->capture_default_str();
}

void add_run(CLI::App *cmd, RunOptions &o)
{
    cmd->add_option("--profile", o.profile, "daily load profile CSV")->capture_default_str()->check(CLI::ExistingFile);
    cmd->add_option("--design", o.design_path, "reuse a reference design JSON")->check(CLI::ExistingFile);
    cmd->add_option("--accounting", o.accounting, "idle-state power accounting")->capture_default_str()
        ->check(CLI::IsMember({"idle-off", "active-idle"}));
    cmd->add_flag("--joint-fixed-point", o.joint, "iterate queue and game to a joint fixed point");
}

mmee::SimulationConfig simulation(const CommonOptions &o)
{
    auto sim = mmee::default_config();
    if (!o.config_path.empty())
        sim = mmee::load_config(o.config_path, sim);
    if (o.pa)
        sim.params.pa.kind = mmee::pa_kind_from_string(*o.pa);
    if (o.radius)
        sim.cell_radius_m = *o.radius;
    sim.validate();
    return sim;
}

mmee::RunConfig run_config(const CommonOptions &c, const RunOptions &r)
{
    mmee::RunConfig rc;
    rc.sim = simulation(c);
    rc.profile = mmee::load_load_profile(r.profile);
    rc.accounting = mmee::idle_accounting_from_string(r.accounting);
    rc.joint_fixed_point = r.joint;
    if (!r.design_path.empty())
    {
        std::ifstream in(r.design_path);
        rc.design = mmee::design_from_json(nlohmann::json::parse(in));
    }
    return rc;
}

void print_design(const mmee::ReferenceDesign &d)
{
    std::printf("reference design (%s, %.0f m): K_max = %d, M_max = %d, p = %.4f W, peak EE = %.4g Mbit/J\n",
                mmee::to_string(d.pa_kind).c_str(), d.cell_radius, d.k_max, d.m_max, d.p_opt, d.peak_ee / 1e6);
}

void print_report(const mmee::DailyReport &r)
{
    print_design(r.design);
    std::printf("daily EE gain %.2f %%, energy saving %.2f %%, mean rate change %.2f %% over %zu intervals\n",
                100.0 * r.aggregates.ee_gain, 100.0 * r.aggregates.energy_saving, 100.0 * r.aggregates.rate_change,
                r.intervals.size());
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"mmee: load-adaptive massive MIMO energy-efficiency simulator"};
    app.require_subcommand(1);

    CommonOptions dim_opts;
    auto *dim = app.add_subcommand("dimension", "dimension the reference system and write design.json");
    add_common(dim, dim_opts);

    CommonOptions run_common;
    RunOptions run_opts;
    auto *run = app.add_subcommand("run", "simulate one day and write intervals.csv, summary.json, policy.json");
    add_common(run, run_common);
    add_run(run, run_opts);

    CommonOptions sweep_common;
    RunOptions sweep_opts;
    std::string over = "radius";
    std::vector<double> values;
    auto *swp = app.add_subcommand("sweep", "repeat the daily run over cell radii or transmit powers");
    add_common(swp, sweep_common);
    add_run(swp, sweep_opts);
    swp->add_option("--over", over, "swept quantity")->capture_default_str()->check(CLI::IsMember({"radius", "p"}));
    swp->add_option("--values", values, "values (m or W)")->required()->check(CLI::PositiveNumber);

    CommonOptions geo_opts;
    auto *geo = app.add_subcommand("geometry", "write the layout and coupling gains as geometry.json");
    add_common(geo, geo_opts);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*dim)
        {
            const auto sim = simulation(dim_opts);
            const auto design = mmee::dimension(sim);
            print_design(design);
            std::filesystem::create_directories(dim_opts.out);
            std::ofstream(std::filesystem::path(dim_opts.out) / "design.json") << mmee::to_json(design).dump(2) << "\n";
        }
        else if (*run)
        {
            const auto report = mmee::run_daily(run_config(run_common, run_opts));
            mmee::emit(report, run_common.out);
            print_report(report);
        }
        else if (*swp)
        {
            const auto dimension = mmee::sweep_dimension_from_string(over);
            auto rc = run_config(sweep_common, sweep_opts);
            const auto reports = mmee::sweep(rc, dimension, values);
            const std::filesystem::path out(sweep_common.out);
            for (std::size_t i = 0; i < values.size(); ++i)
            {
                std::ostringstream name;
                name << over << "_" << values[i];
                mmee::emit(reports[i], out / name.str());
                std::printf("%s = %g\n", over.c_str(), values[i]);
                print_report(reports[i]);
            }
            std::ofstream(out / "sweep.csv") << mmee::sweep_csv(dimension, values, reports);
        }
        else if (*geo)
        {
            const auto sim = simulation(geo_opts);
            const auto layout = mmee::build_layout(sim.num_cells, sim.cell_radius_m, sim.min_distance_m, sim.grid_size);
            const auto gains = mmee::compute_coupling(layout, sim.path_loss);
            std::filesystem::create_directories(geo_opts.out);
            std::ofstream(std::filesystem::path(geo_opts.out) / "geometry.json")
                << mmee::to_json(layout, gains).dump() << "\n";
            std::printf("G_cc = %.6g, sum_d G_cd = %.6g\n", gains.g_own[0], gains.cross_row_sum(0));
        }
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
