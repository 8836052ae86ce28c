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


#include "simbeam/channel.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "simbeam/log.hpp"

namespace simbeam
{

CMat sample_user_channels(Rng &rng, int num_users, int num_meta)
{
    if (num_users < 1 || num_meta < 1)
        throw ConfigError("sample_user_channels: K and Q must be >= 1");
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    CMat H(num_users, num_meta);
    // Fill order is part of the determinism contract: row by row.
    for (int k = 0; k < num_users; ++k)
        for (int q = 0; q < num_meta; ++q)
        {
            const double re = nd(rng);
            const double im = nd(rng);
            H(k, q) = cplx(re, im);
        }
    return H;
}

double path_loss(double distance, double wavelength, double reference_distance, double exponent)
{
    if (!(reference_distance > 0.0) || !(distance > 0.0))
        throw DomainError("path_loss: distances must be positive");
    if (distance < reference_distance)
        log::warn("path_loss: user at " + std::to_string(distance) + " m is inside the reference distance");
    const double fspl = wavelength * wavelength / std::pow(4.0 * kPi * reference_distance, 2.0);
    return fspl * std::pow(reference_distance / distance, exponent);
}

double noise_variance(double psd_dbm_per_hz, double bandwidth_hz)
{
    if (!(bandwidth_hz > 0.0))
        throw DomainError("noise_variance: bandwidth must be positive");
    return dbm_to_watts(psd_dbm_per_hz) * bandwidth_hz;
}

ReducedChannel reduce(const CMat &H, const RVec &path_loss, std::span<const int> subset)
{
    const auto K = static_cast<int>(H.rows());
    if (path_loss.size() != K)
        throw StructuralError("reduce: path-loss vector must have K entries");
    std::vector<bool> seen(K, false);
    ReducedChannel out{CMat(subset.size(), H.cols()), RVec(subset.size())};
    for (std::size_t i = 0; i < subset.size(); ++i)
    {
        const int k = subset[i];
        if (k < 0 || k >= K)
            throw StructuralError("reduce: user index " + std::to_string(k) + " out of range");
        if (seen[k])
            throw StructuralError("reduce: duplicate user index " + std::to_string(k));
        seen[k] = true;
        out.H.row(static_cast<Eigen::Index>(i)) = H.row(k);
        out.path_loss[static_cast<Eigen::Index>(i)] = path_loss[k];
    }
    return out;
}

} // namespace simbeam
