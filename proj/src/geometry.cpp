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


#include "simbeam/geometry.hpp"

#include <cmath>
#include <string>

namespace simbeam
{

namespace
{

std::vector<Point> centered_grid(int qx, int qy, double pitch, double z)
{
    std::vector<Point> pts(static_cast<std::size_t>(qx) * qy);
    const double x0 = 0.5 * (qx - 1);
    const double y0 = 0.5 * (qy - 1);
    for (int ix = 0; ix < qx; ++ix)
        for (int iy = 0; iy < qy; ++iy)
            pts[static_cast<std::size_t>(ix) * qy + iy] = Point((ix - x0) * pitch, (iy - y0) * pitch, z);
    return pts;
}

} // namespace

SimGeometry build_layout(const LayoutParams &p)
{
    if (!(p.carrier_hz > 0.0))
        throw ConfigError("build_layout: carrier frequency must be positive");
    if (p.qx < 1 || p.qy < 1)
        throw ConfigError("build_layout: grid dimensions must be >= 1 (got " + std::to_string(p.qx) + "x" +
                          std::to_string(p.qy) + ")");
    if (p.num_layers < 1)
        throw ConfigError("build_layout: at least one layer is required");
    if (p.num_antennas < 1)
        throw ConfigError("build_layout: at least one antenna is required");
    if (!(p.pitch_wavelengths > 0.0) || !(p.stack_depth_wavelengths > 0.0) || !(p.meta_area_wavelengths2 > 0.0) ||
        !(p.antenna_area_wavelengths2 > 0.0) || !(p.antenna_spacing_wavelengths > 0.0))
        throw ConfigError("build_layout: lengths and areas must be positive");
    if (p.first_gap_wavelengths && !(*p.first_gap_wavelengths > 0.0))
        throw ConfigError("build_layout: first gap must be positive");

    SimGeometry g;
    g.wavelength = kSpeedOfLight / p.carrier_hz;
    const double lam = g.wavelength;
    g.layer_gap = p.stack_depth_wavelengths * lam / p.num_layers;
    g.first_gap = p.first_gap_wavelengths ? *p.first_gap_wavelengths * lam : g.layer_gap;
    g.meta_area = p.meta_area_wavelengths2 * lam * lam;
    g.antenna_area = p.antenna_area_wavelengths2 * lam * lam;
    g.qx = p.qx;
    g.qy = p.qy;
    g.pitch = p.pitch_wavelengths * lam;

    // ULA along x, centred on the array origin.
    const double spacing = p.antenna_spacing_wavelengths * lam;
    const double c0 = 0.5 * (p.num_antennas - 1);
    g.antennas.reserve(p.num_antennas);
    for (int n = 0; n < p.num_antennas; ++n)
        g.antennas.emplace_back((n - c0) * spacing, 0.0, 0.0);

    g.layers.reserve(p.num_layers);
    for (int l = 0; l < p.num_layers; ++l)
        g.layers.push_back(centered_grid(p.qx, p.qy, g.pitch, g.first_gap + l * g.layer_gap));
    return g;
}

DistanceSet pairwise_distances(std::span<const Point> src, std::span<const Point> dst, double gap)
{
    if (!(gap > 0.0))
        throw DomainError("pairwise_distances: axial gap must be positive");

    const auto rows = static_cast<Eigen::Index>(dst.size());
    const auto cols = static_cast<Eigen::Index>(src.size());
    DistanceSet out{RMat(rows, cols), RMat(rows, cols)};
    const double gap2 = gap * gap;
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
        {
            const double dx = dst[r].x() - src[c].x();
            const double dy = dst[r].y() - src[c].y();
            const double d = std::sqrt(dx * dx + dy * dy + gap2);
            out.distance(r, c) = d;
            out.cosine(r, c) = gap / d;
        }
    return out;
}

UserLayout place_users(Rng &rng, int num_users, double radius, double bs_height, const Point &sim_position)
{
    if (num_users < 1)
        throw ConfigError("place_users: K must be >= 1");
    if (radius < 0.0)
        throw ConfigError("place_users: radius must be non-negative");

    UserLayout u;
    u.bs_height = bs_height;
    u.radius = radius;
    u.positions.reserve(num_users);
    u.distances.resize(num_users);

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int k = 0; k < num_users; ++k)
    {
        // sqrt of a uniform variate gives an area-uniform radius.
        const double rho = radius * std::sqrt(unif(rng));
        const double theta = kTwoPi * unif(rng);
        u.positions.emplace_back(rho * std::cos(theta), rho * std::sin(theta), 0.0);
        u.distances[k] = (u.positions.back() - sim_position).norm();
    }
    return u;
}

} // namespace simbeam
