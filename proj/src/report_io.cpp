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

#include "mmee/report_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mmee
{

namespace
{

std::string fmt(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string &s, std::size_t line)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::invalid_argument("intervals.csv line " + std::to_string(line) + ": bad number \"" + s + "\"");
    return v;
}

std::string read_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
}

} // namespace

const std::vector<std::string> &interval_columns()
{
    static const std::vector<std::string> cols{
        "interval",           "load_fraction",      "adaptive_ee_bit_per_j", "reference_ee_bit_per_j",
        "ee_gain",            "adaptive_power_w",   "reference_power_w",     "energy_saving",
        "adaptive_rate_bps",  "reference_rate_bps", "rate_change",           "adaptive_antennas",
        "reference_antennas", "adaptive_activity",  "reference_activity",    "game_sweeps",
        "nash_certified"};
    return cols;
}

std::string intervals_csv(const DailyReport &report)
{
    std::string out;
    for (std::size_t i = 0; i < interval_columns().size(); ++i)
        out += (i ? "," : "") + interval_columns()[i];
    out += '\n';
    for (const auto &r : report.intervals)
    {
        const std::vector<std::string> fields{std::to_string(r.index),
                                              fmt(r.load_fraction),
                                              fmt(r.adaptive_ee),
                                              fmt(r.reference_ee),
                                              fmt(r.ee_gain()),
                                              fmt(r.adaptive_power_w),
                                              fmt(r.reference_power_w),
                                              fmt(r.energy_saving()),
                                              fmt(r.adaptive_rate_bps),
                                              fmt(r.reference_rate_bps),
                                              fmt(r.rate_change()),
                                              fmt(r.adaptive_antennas),
                                              fmt(r.reference_antennas),
                                              fmt(r.adaptive_activity),
                                              fmt(r.reference_activity),
                                              std::to_string(r.game_sweeps),
                                              r.nash_certified ? "1" : "0"};
        for (std::size_t i = 0; i < fields.size(); ++i)
            out += (i ? "," : "") + fields[i];
        out += '\n';
    }
    return out;
}

nlohmann::json summary_json(const DailyReport &report)
{
    bool certified = true;
    int sweeps = 0;
    for (const auto &r : report.intervals)
    {
        certified = certified && r.nash_certified;
        sweeps = std::max(sweeps, r.game_sweeps);
    }
    return {{"artifact_version", kArtifactVersion},
            {"profile", report.profile_label},
            {"intervals", report.intervals.size()},
            {"aggregates",
             {{"ee_gain", report.aggregates.ee_gain},
              {"energy_saving", report.aggregates.energy_saving},
              {"rate_change", report.aggregates.rate_change}}},
            {"reference_design", to_json(report.design)},
            {"lambda_max_per_s", report.lambda_max},
            {"all_nash_certified", certified},
            {"max_game_sweeps", sweeps},
            {"config", report.config}};
}

nlohmann::json policy_json(const DailyReport &report)
{
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t h = 0; h < report.policies.size(); ++h)
        arr.push_back({{"interval", report.intervals.at(h).index},
                       {"policy", to_json(report.policies[h])},
                       {"maxtol", report.maxtol.at(h)},
                       {"monotone_trace", static_cast<bool>(report.monotone_traces.at(h))}});
    return {{"intervals", arr}};
}

void emit(const DailyReport &report, const std::filesystem::path &dir)
{
    std::filesystem::create_directories(dir);
    write_file(dir / "intervals.csv", intervals_csv(report));
    write_file(dir / "summary.json", summary_json(report).dump(2) + "\n");
    write_file(dir / "policy.json", policy_json(report).dump() + "\n");
}

DailyReport read_report(const std::filesystem::path &dir)
{
    DailyReport report;
    std::istringstream csv(read_file(dir / "intervals.csv"));
    std::string line;
    std::getline(csv, line);
    std::size_t line_no = 1;
    while (std::getline(csv, line))
    {
        ++line_no;
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');)
            f.push_back(cell);
        if (f.size() != interval_columns().size())
            throw std::invalid_argument("intervals.csv line " + std::to_string(line_no) + ": wrong column count");
        IntervalRow r;
        r.index = static_cast<int>(parse_double(f[0], line_no));
        r.load_fraction = parse_double(f[1], line_no);
        r.adaptive_ee = parse_double(f[2], line_no);
        r.reference_ee = parse_double(f[3], line_no);
        r.adaptive_power_w = parse_double(f[5], line_no);
        r.reference_power_w = parse_double(f[6], line_no);
        r.adaptive_rate_bps = parse_double(f[8], line_no);
        r.reference_rate_bps = parse_double(f[9], line_no);
        r.adaptive_antennas = parse_double(f[11], line_no);
        r.reference_antennas = parse_double(f[12], line_no);
        r.adaptive_activity = parse_double(f[13], line_no);
        r.reference_activity = parse_double(f[14], line_no);
        r.game_sweeps = static_cast<int>(parse_double(f[15], line_no));
        r.nash_certified = f[16] == "1";
        report.intervals.push_back(r);
    }

    try
    {
        const auto summary = nlohmann::json::parse(read_file(dir / "summary.json"));
        report.profile_label = summary.at("profile").get<std::string>();
        const auto &agg = summary.at("aggregates");
        report.aggregates = {agg.at("ee_gain").get<double>(), agg.at("energy_saving").get<double>(),
                             agg.at("rate_change").get<double>()};
        report.design = design_from_json(summary.at("reference_design"));
        report.lambda_max = summary.at("lambda_max_per_s").get<double>();
        report.config = summary.at("config");

        const auto policy = nlohmann::json::parse(read_file(dir / "policy.json"));
        for (const auto &entry : policy.at("intervals"))
        {
            report.policies.push_back(policy_from_json(entry.at("policy")));
            report.maxtol.push_back(entry.at("maxtol").get<std::vector<int>>());
            report.monotone_traces.push_back(entry.at("monotone_trace").get<bool>());
        }
    }
    catch (const nlohmann::json::exception &e)
    {
        throw std::invalid_argument(std::string("read_report: ") + e.what());
    }
    return report;
}

std::string sweep_csv(SweepDimension dimension, const std::vector<double> &values,
                      const std::vector<DailyReport> &reports)
{
    if (values.size() != reports.size())
        throw std::invalid_argument("sweep_csv: one report per value is required");
    std::string out = to_string(dimension) + ",k_max,m_max,p_opt_w,peak_ee_bit_per_j,ee_gain,energy_saving,rate_change\n";
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        const auto &r = reports[i];
        out += fmt(values[i]) + "," + std::to_string(r.design.k_max) + "," + std::to_string(r.design.m_max) + "," +
               fmt(r.design.p_opt) + "," + fmt(r.design.peak_ee) + "," + fmt(r.aggregates.ee_gain) + "," +
               fmt(r.aggregates.energy_saving) + "," + fmt(r.aggregates.rate_change) + "\n";
    }
    return out;
}

} // namespace mmee
