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
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

namespace mmee
{

struct Point2
{
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }

// 19-cell hexagonal layout with toroidal wrap-around.
//
// Hexagons are flat-top with circumradius `cell_radius`; the inter-site distance is sqrt(3) * cell_radius.
// Cell 0 sits at the origin, cells 1..6 form the first ring and 7..18 the second ring, each ring walked
// counter-clockwise starting from the south-west corner of the ring. `wrap_offsets[0]` is the zero vector,
// the remaining six translate the whole cluster onto its neighbouring copies.
//
// Test points are stored once, relative to the serving BS, and are shared by all cells. They are
// invariant under 60 degree rotations whenever the grid size is a multiple of six.
struct NetworkLayout
{
    std::vector<Point2> cell_centers;
    double cell_radius = 0.0;
    double min_distance = 0.0;
    std::vector<Point2> wrap_offsets;
    std::vector<Point2> test_points;

    std::size_t num_cells() const { return cell_centers.size(); }
    std::size_t grid_size() const { return test_points.size(); }

    // Absolute position of test point `k` of cell `c`.
    Point2 user_position(std::size_t c, std::size_t k) const { return cell_centers[c] + test_points[k]; }

    // Distance from `pos` to the nearest wrap-around image of BS `d`.
    double wrapped_distance(Point2 pos, std::size_t d) const;
};

// G_cc = E[1/g_cck] per cell and G_cd = E[g_dck / g_cck] per ordered pair; the diagonal of `g_cross` is zero.
struct CouplingGains
{
    std::vector<double> g_own;
    std::vector<std::vector<double>> g_cross;

    std::size_t num_cells() const { return g_own.size(); }
    double cross_row_sum(std::size_t c) const;
};

struct PathLoss
{
    double coefficient = 0.0; // linear gain at 1 m
    double exponent = 0.0;

    double gain(double distance_m) const;
};

// Default path loss: 10^-3.53 / d^3.76.
PathLoss default_path_loss();

NetworkLayout build_layout(std::size_t num_cells, double d_max, double d_min, std::size_t grid_size);

// True when `p` (relative to the hexagon centre) lies inside a flat-top hexagon of circumradius `radius`.
bool inside_hexagon(Point2 p, double radius);

// OpenMP kernel; rows are distributed over threads, each entry is summed in point order so the result
// does not depend on the thread count.
CouplingGains compute_coupling(const NetworkLayout &layout, const PathLoss &path_loss);

namespace reference
{
// Straightforward serial evaluation kept as the oracle for the parallel kernel.
CouplingGains compute_coupling(const NetworkLayout &layout, const PathLoss &path_loss);
} // namespace reference

nlohmann::json to_json(const NetworkLayout &layout, const CouplingGains &gains);
CouplingGains coupling_from_json(const nlohmann::json &j);

} // namespace mmee
