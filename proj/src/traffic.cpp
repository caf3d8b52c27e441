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

#include "mmee/traffic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace mmee
{

namespace
{

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

template <typename T> bool parse_number(const std::string &s, T &out)
{
    const auto t = trim(s);
    const auto *end = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(t.data(), end, out);
    return ec == std::errc() && ptr == end;
}

double blocking_at(QueueModel q, double lambda)
{
    q.arrival_rate = lambda;
    return steady_state(q).blocking();
}

} // namespace

double effective_load_fraction(double fraction) { return std::max(fraction, kMinLoadFraction); }

LoadProfile parse_load_profile(std::istream &in, const std::string &label)
{
    LoadProfile profile;
    profile.label = label;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line))
    {
        ++line_no;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        const auto where = label + ":" + std::to_string(line_no) + ": ";
        if (!have_header)
        {
            if (t != "interval,load_fraction")
                throw std::invalid_argument(where + "expected header 'interval,load_fraction'");
            have_header = true;
            continue;
        }
        const auto comma = t.find(',');
        LoadInterval iv;
        if (comma == std::string::npos || !parse_number(t.substr(0, comma), iv.index) ||
            !parse_number(t.substr(comma + 1), iv.load_fraction))
            throw std::invalid_argument(where + "malformed row '" + t + "'");
        if (!(iv.load_fraction > 0.0 && iv.load_fraction <= 1.0))
            throw std::invalid_argument(where + "load fraction outside (0, 1]");
        if (!profile.intervals.empty() && iv.index <= profile.intervals.back().index)
            throw std::invalid_argument(where + "interval indices must be strictly increasing");
        profile.intervals.push_back(iv);
    }
    if (!have_header)
        throw std::invalid_argument(label + ": missing header row");
    if (profile.intervals.empty())
        throw std::invalid_argument(label + ": profile has no intervals");
    const auto peak = std::max_element(profile.intervals.begin(), profile.intervals.end(),
                                       [](const auto &a, const auto &b) { return a.load_fraction < b.load_fraction; });
    if (peak->load_fraction != 1.0)
        throw std::invalid_argument(label + ": profile must reach load fraction 1 at its peak");
    return profile;
}

LoadProfile load_load_profile(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open load profile '" + path + "'");
    return parse_load_profile(in, std::filesystem::path(path).stem().string());
}

void QueueModel::validate() const
{
    if (servers < 1)
        throw std::invalid_argument("QueueModel: need at least one server");
    if (rates.size() != static_cast<std::size_t>(servers))
        throw std::invalid_argument("QueueModel: rate vector length must equal the server count");
    for (double r : rates)
        if (!(r > 0.0) || !std::isfinite(r))
            throw std::invalid_argument("QueueModel: rates must be positive and finite");
    if (!(per_user_bits > 0.0))
        throw std::invalid_argument("QueueModel: per-user traffic must be positive");
    if (!(arrival_rate >= 0.0))
        throw std::invalid_argument("QueueModel: arrival rate must be non-negative");
}

double StateDistribution::mean_occupancy() const
{
    double m = 0.0;
    for (std::size_t n = 0; n < pi.size(); ++n)
        m += static_cast<double>(n) * pi[n];
    return m;
}

StateDistribution steady_state(const QueueModel &q)
{
    q.validate();
    StateDistribution out;
    out.pi.assign(q.servers + 1, 0.0);
    if (q.arrival_rate == 0.0)
    {
        out.pi[0] = 1.0;
        return out;
    }
    std::vector<double> log_terms(q.servers + 1, 0.0);
    const double log_load = std::log(q.arrival_rate * q.per_user_bits);
    for (int n = 1; n <= q.servers; ++n)
        log_terms[n] = log_terms[n - 1] + log_load - std::log(static_cast<double>(n) * q.rates[n - 1]);
    const double peak = *std::max_element(log_terms.begin(), log_terms.end());
    double total = 0.0;
    for (int n = 0; n <= q.servers; ++n)
    {
        out.pi[n] = std::exp(log_terms[n] - peak);
        total += out.pi[n];
    }
    if (!std::isfinite(total) || !(total > 0.0))
        throw std::runtime_error("steady_state: non-finite normalisation");
    for (double &v : out.pi)
        v /= total;
    return out;
}

double calibrate_lambda_max(const QueueModel &tmpl, double target_blocking)
{
    if (!(target_blocking > 0.0 && target_blocking < 1.0))
        throw std::invalid_argument("calibrate_lambda_max: target must lie in (0, 1)");
    tmpl.validate();
    double lo = 0.0;
    double hi = tmpl.rates[0] / tmpl.per_user_bits; // unit offered load
    for (int i = 0; blocking_at(tmpl, hi) < target_blocking; ++i)
    {
        if (i > 2000)
            throw std::runtime_error("calibrate_lambda_max: blocking target unreachable");
        lo = hi;
        hi *= 2.0;
    }
    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < 200; ++i)
    {
        mid = 0.5 * (lo + hi);
        const double b = blocking_at(tmpl, mid);
        if (std::abs(b - target_blocking) <= 1e-13 || mid == lo || mid == hi)
            break;
        (b < target_blocking ? lo : hi) = mid;
    }
    return mid;
}

StateDistribution interval_distribution(const LoadProfile &profile, std::size_t h, double lambda_max,
                                        const QueueModel &tmpl)
{
    if (h >= profile.size())
        throw std::invalid_argument("interval_distribution: interval index out of range");
    QueueModel q = tmpl;
    q.arrival_rate = effective_load_fraction(profile.intervals[h].load_fraction) * lambda_max;
    return steady_state(q);
}

} // namespace mmee
