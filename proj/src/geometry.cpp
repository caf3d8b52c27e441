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

#include "mmee/geometry.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mmee
{

namespace
{

constexpr std::size_t kSupportedCells = 19;

// Axial (q, r) coordinates of the flat-top grid.
struct Axial
{
    int q;
    int r;
};

Point2 axial_to_xy(Axial a, double radius)
{
    return {1.5 * radius * a.q, std::numbers::sqrt3 * radius * (a.r + 0.5 * a.q)};
}

std::vector<Axial> cluster_cells()
{
    constexpr std::array<Axial, 6> dirs{{{1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}}};
    std::vector<Axial> cells{{0, 0}};
    for (int ring = 1; ring <= 2; ++ring)
    {
        Axial a{-ring, ring};
        for (const auto &dir : dirs)
        {
            for (int step = 0; step < ring; ++step)
            {
                cells.push_back(a);
                a.q += dir.q;
                a.r += dir.r;
            }
        }
    }
    return cells;
}

// Translations that tile the plane with copies of the 19-cell cluster.
constexpr std::array<Axial, 7> kWrapShifts{{{0, 0}, {5, -2}, {2, 3}, {-3, 5}, {-5, 2}, {-2, -3}, {3, -5}}};

// Additive recurrence on the plastic number; low-discrepancy and fully deterministic.
constexpr double kPlastic = 1.32471795724474602596;
constexpr double kAlpha1 = 1.0 / kPlastic;
constexpr double kAlpha2 = 1.0 / (kPlastic * kPlastic);

std::vector<Point2> sector_points(std::size_t count, double d_max, double d_min)
{
    const Point2 v0{d_max, 0.0};
    const Point2 v1{0.5 * d_max, 0.5 * std::numbers::sqrt3 * d_max};
    std::vector<Point2> pts;
    pts.reserve(count);
    for (std::size_t i = 1; pts.size() < count; ++i)
    {
        double u = std::fmod(0.5 + kAlpha1 * static_cast<double>(i), 1.0);
        double v = std::fmod(0.5 + kAlpha2 * static_cast<double>(i), 1.0);
        if (u + v > 1.0)
        {
            u = 1.0 - u;
            v = 1.0 - v;
        }
        const Point2 p{u * v0.x + v * v1.x, u * v0.y + v * v1.y};
        if (std::hypot(p.x, p.y) >= d_min)
            pts.push_back(p);
    }
    return pts;
}

Point2 rotate(Point2 p, int sixths)
{
    const double a = sixths * std::numbers::pi / 3.0;
    const double c = std::cos(a), s = std::sin(a);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}

void check_layout(const NetworkLayout &layout)
{
    if (layout.num_cells() == 0 || layout.grid_size() == 0)
        throw std::invalid_argument("compute_coupling: empty layout");
}

} // namespace

double NetworkLayout::wrapped_distance(Point2 pos, std::size_t d) const
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto &off : wrap_offsets)
    {
        const Point2 bs = cell_centers[d] + off;
        best = std::min(best, std::hypot(pos.x - bs.x, pos.y - bs.y));
    }
    return best;
}

double CouplingGains::cross_row_sum(std::size_t c) const
{
    double s = 0.0;
    for (std::size_t d = 0; d < g_cross[c].size(); ++d)
        if (d != c)
            s += g_cross[c][d];
    return s;
}

double PathLoss::gain(double distance_m) const { return coefficient / std::pow(distance_m, exponent); }

PathLoss default_path_loss() { return {std::pow(10.0, -3.53), 3.76}; }

bool inside_hexagon(Point2 p, double radius)
{
    // flat-top: |y| <= sqrt(3)/2 R and sqrt(3)|x| + |y| <= sqrt(3) R
    const double ax = std::abs(p.x), ay = std::abs(p.y);
    const double eps = 1e-9 * radius;
    return ay <= 0.5 * std::numbers::sqrt3 * radius + eps && std::numbers::sqrt3 * ax + ay <= std::numbers::sqrt3 * radius + eps;
}

NetworkLayout build_layout(std::size_t num_cells, double d_max, double d_min, std::size_t grid_size)
{
    if (num_cells != kSupportedCells)
        throw std::invalid_argument("build_layout: only the 19-cell wrap-around layout is supported (got " +
                                    std::to_string(num_cells) + ")");
    if (!(d_max > 0.0) || !(d_min >= 0.0) || d_min >= d_max)
        throw std::invalid_argument("build_layout: require 0 <= d_min < d_max");
    if (grid_size == 0)
        throw std::invalid_argument("build_layout: grid_size must be at least 1");

    NetworkLayout layout;
    layout.cell_radius = d_max;
    layout.min_distance = d_min;
    for (const auto &a : cluster_cells())
        layout.cell_centers.push_back(axial_to_xy(a, d_max));
    for (const auto &s : kWrapShifts)
        layout.wrap_offsets.push_back(axial_to_xy(s, d_max));

    const std::size_t per_sector = (grid_size + 5) / 6;
    const auto sector = sector_points(per_sector, d_max, d_min);
    layout.test_points.reserve(grid_size);
    for (std::size_t i = 0; i < per_sector && layout.test_points.size() < grid_size; ++i)
        for (int k = 0; k < 6 && layout.test_points.size() < grid_size; ++k)
            layout.test_points.push_back(rotate(sector[i], k));
    return layout;
}

CouplingGains compute_coupling(const NetworkLayout &layout, const PathLoss &path_loss)
{
    check_layout(layout);
    const std::size_t nc = layout.num_cells();
    const std::size_t np = layout.grid_size();

    std::vector<double> log_own(np);
    double own_sum = 0.0;
    for (std::size_t k = 0; k < np; ++k)
    {
        const double r = std::hypot(layout.test_points[k].x, layout.test_points[k].y);
        if (r == 0.0)
            throw std::invalid_argument("compute_coupling: test point coincides with its BS");
        log_own[k] = std::log(r);
        own_sum += std::exp(path_loss.exponent * log_own[k]);
    }
    // The test points are shared, so the own-cell statistic is identical for every cell.
    const double g_own = own_sum / static_cast<double>(np) / path_loss.coefficient;

    CouplingGains out;
    out.g_own.assign(nc, g_own);
    out.g_cross.assign(nc, std::vector<double>(nc, 0.0));

    const auto n_pairs = static_cast<std::ptrdiff_t>(nc * nc);
    bool zero_distance = false;
#pragma omp parallel for schedule(dynamic) reduction(|| : zero_distance)
    for (std::ptrdiff_t pair = 0; pair < n_pairs; ++pair)
    {
        const auto c = static_cast<std::size_t>(pair) / nc;
        const auto d = static_cast<std::size_t>(pair) % nc;
        if (c == d)
            continue;
        double acc = 0.0;
        for (std::size_t k = 0; k < np; ++k)
        {
            const Point2 pos = layout.user_position(c, k);
            double best_sq = std::numeric_limits<double>::infinity();
            for (const auto &off : layout.wrap_offsets)
            {
                const double dx = pos.x - layout.cell_centers[d].x - off.x;
                const double dy = pos.y - layout.cell_centers[d].y - off.y;
                best_sq = std::min(best_sq, dx * dx + dy * dy);
            }
            if (best_sq == 0.0)
                zero_distance = true;
            // g_d / g_c = (r_c / r_d)^exp
            acc += std::exp(path_loss.exponent * (log_own[k] - 0.5 * std::log(best_sq)));
        }
        out.g_cross[c][d] = acc / static_cast<double>(np);
    }
    if (zero_distance)
        throw std::invalid_argument("compute_coupling: test point coincides with an interfering BS");
    return out;
}

namespace reference
{

CouplingGains compute_coupling(const NetworkLayout &layout, const PathLoss &path_loss)
{
    check_layout(layout);
    const std::size_t nc = layout.num_cells();
    const std::size_t np = layout.grid_size();
    CouplingGains out;
    out.g_own.assign(nc, 0.0);
    out.g_cross.assign(nc, std::vector<double>(nc, 0.0));
    for (std::size_t c = 0; c < nc; ++c)
    {
        for (std::size_t k = 0; k < np; ++k)
        {
            const Point2 pos = layout.user_position(c, k);
            const double r_own = std::hypot(pos.x - layout.cell_centers[c].x, pos.y - layout.cell_centers[c].y);
            if (r_own == 0.0)
                throw std::invalid_argument("compute_coupling: test point coincides with its BS");
            const double g_own = path_loss.gain(r_own);
            out.g_own[c] += 1.0 / g_own;
            for (std::size_t d = 0; d < nc; ++d)
            {
                if (d == c)
                    continue;
                const double r = layout.wrapped_distance(pos, d);
                if (r == 0.0)
                    throw std::invalid_argument("compute_coupling: test point coincides with an interfering BS");
                out.g_cross[c][d] += path_loss.gain(r) / g_own;
            }
        }
        out.g_own[c] /= static_cast<double>(np);
        for (auto &v : out.g_cross[c])
            v /= static_cast<double>(np);
    }
    return out;
}

} // namespace reference

nlohmann::json to_json(const NetworkLayout &layout, const CouplingGains &gains)
{
    nlohmann::json centers = nlohmann::json::array();
    for (const auto &p : layout.cell_centers)
        centers.push_back({p.x, p.y});
    return {{"cell_radius_m", layout.cell_radius},
            {"min_distance_m", layout.min_distance},
            {"grid_size", layout.grid_size()},
            {"cell_centers", centers},
            {"g_own", gains.g_own},
            {"g_cross", gains.g_cross}};
}

CouplingGains coupling_from_json(const nlohmann::json &j)
{
    CouplingGains g;
    j.at("g_own").get_to(g.g_own);
    j.at("g_cross").get_to(g.g_cross);
    if (g.g_cross.size() != g.g_own.size())
        throw std::invalid_argument("coupling_from_json: g_cross/g_own size mismatch");
    return g;
}

} // namespace mmee
