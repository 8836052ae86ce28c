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

#include <span>

#include "simbeam/types.hpp"

namespace simbeam
{

/// User channels and large-scale constants. Row k of `H` is h_k^H.
struct ChannelSet
{
    CMat H;
    RVec path_loss;
    double noise_variance = 0.0;
};

/// K x Q i.i.d. CN(0, 1) entries.
CMat sample_user_channels(Rng &rng, int num_users, int num_meta);

/// [lambda^2 / (4 pi d0)^2] (d0 / d)^eta. Warns (and still evaluates) when d < d0.
double path_loss(double distance, double wavelength, double reference_distance, double exponent);

/// Noise power in watts for a PSD in dBm/Hz over `bandwidth_hz`.
double noise_variance(double psd_dbm_per_hz, double bandwidth_hz);

struct ReducedChannel
{
    CMat H;        // N x Q
    RVec path_loss; // N
};

/// Selects the rows named in `subset` (0-based, ordered).
ReducedChannel reduce(const CMat &H, const RVec &path_loss, std::span<const int> subset);

} // namespace simbeam
