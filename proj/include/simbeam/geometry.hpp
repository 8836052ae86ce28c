// SPDX-License-Identifier: Apache-2.0
//
// simbeam: wave-domain multiuser beamforming through stacked metasurfaces
// Copyright (C) 2026 The simbeam authors
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

#include <optional>
#include <span>
#include <vector>

#include "simbeam/types.hpp"

namespace simbeam
{

/// Scenario quantities that fix the physical layout of the array and the stack.
/// Lengths expressed in wavelengths are converted once the carrier is known.
struct LayoutParams
{
    double carrier_hz = 28.0e9;
    int num_antennas = 4;
    int qx = 7;
    int qy = 7;
    int num_layers = 12;
    double pitch_wavelengths = 0.5;
    double antenna_spacing_wavelengths = 0.5;
    // Layer spacing is stack_depth / num_layers.
    double stack_depth_wavelengths = 5.0;
    // Array-to-first-layer gap; defaults to the layer spacing.
    std::optional<double> first_gap_wavelengths;
    double meta_area_wavelengths2 = 0.25;
    double antenna_area_wavelengths2 = 0.25;
};

/// Positions of the feed array and of every meta-atom, in a local frame where
/// the array plane is z = 0 and layer l (0-based) sits at z = first_gap + l * layer_gap.
struct SimGeometry
{
    double wavelength = 0.0;
    double first_gap = 0.0;
    double layer_gap = 0.0;
    double meta_area = 0.0;
    double antenna_area = 0.0;
    int qx = 0;
    int qy = 0;
    double pitch = 0.0;
    std::vector<Point> antennas;
    std::vector<std::vector<Point>> layers;

    int num_meta() const { return qx * qy; }
    int num_layers() const { return static_cast<int>(layers.size()); }
    int num_antennas() const { return static_cast<int>(antennas.size()); }

    // Row-major 1-D index over the meta-atom grid.
    int grid_index(int ix, int iy) const { return ix * qy + iy; }
};

SimGeometry build_layout(const LayoutParams &params);

struct DistanceSet
{
    RMat distance; // rows: destination points, cols: source points
    RMat cosine;   // gap / distance
};

/// Distances between two parallel planes separated axially by `gap`; only the
/// transverse (x, y) coordinates of the points are used.
DistanceSet pairwise_distances(std::span<const Point> src, std::span<const Point> dst, double gap);

struct UserLayout
{
    std::vector<Point> positions;
    RVec distances; // to the stack reference point
    double bs_height = 0.0;
    double radius = 0.0;

    int num_users() const { return static_cast<int>(positions.size()); }
};

/// Drops K users uniformly (by area) on the disk of radius r in the z = 0 plane.
UserLayout place_users(Rng &rng, int num_users, double radius, double bs_height, const Point &sim_position);

/// Reference point used for user path loss: centre of the last layer, with the
/// stack mounted at the base-station height.
inline Point sim_reference_point(double bs_height) { return Point(0.0, 0.0, bs_height); }

} // namespace simbeam
