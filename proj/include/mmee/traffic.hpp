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
#include <istream>
#include <string>
#include <vector>

namespace mmee
{

// Network load below this fraction of the peak is never used (control signalling floor).
inline constexpr double kMinLoadFraction = 0.10;

double effective_load_fraction(double fraction);

struct LoadInterval
{
    int index = 0;
    double load_fraction = 1.0;
};

// Daily load profile; H is the number of intervals. Fractions lie in (0, 1] and peak at exactly 1.
struct LoadProfile
{
    std::vector<LoadInterval> intervals;
    std::string label;

    std::size_t size() const { return intervals.size(); }
};

// CSV with the header row "interval,load_fraction"; lines starting with '#' are ignored.
// Throws std::invalid_argument naming the offending line.
LoadProfile parse_load_profile(std::istream &in, const std::string &label);
LoadProfile load_load_profile(const std::string &path);

// M/G/m/m loss system whose per-user service rate depends on the occupancy.
struct QueueModel
{
    int servers = 1;             // m = K_max
    double per_user_bits = 1e8;  // s
    std::vector<double> rates;   // rates[n-1] = R(n), bit/s per user with n users in service
    double arrival_rate = 0.0;   // lambda, arrivals/s

    double rate_scaling(int n) const { return rates[n - 1] / rates[0]; } // f(n)
    void validate() const;
};

struct StateDistribution
{
    std::vector<double> pi; // pi[n], n = 0..m

    double blocking() const { return pi.back(); }
    double idle() const { return pi.front(); }
    double activity() const { return 1.0 - pi.front(); }
    double mean_occupancy() const;
};

// pi(n) = prod_{i=1..n} lambda s / (i R(i)) * pi(0), evaluated in the log domain.
StateDistribution steady_state(const QueueModel &q);

// Arrival rate giving blocking probability `target_blocking`; `tmpl.arrival_rate` is ignored.
double calibrate_lambda_max(const QueueModel &tmpl, double target_blocking);

// Distribution in interval `h` with lambda = max(fraction, 0.1) * lambda_max.
StateDistribution interval_distribution(const LoadProfile &profile, std::size_t h, double lambda_max,
                                        const QueueModel &tmpl);

} // namespace mmee
