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

#include "simbeam/types.hpp"

namespace simbeam
{

/// Beamformer columns plus per-stream powers for one scheduled group.
struct BeamformingSolution
{
    CMat beams;          // Q x N, unit-norm columns when accepted
    RVec powers;         // N, watts
    double total_power = 0.0;
    double sum_rate = 0.0; // bits/s/Hz
    int iterations = 0;
};

/// Per-stream SINR. `H` is N x Q with row i = h_i^H; `G` is Q x N.
RVec sinr(const CMat &H, const RVec &path_loss, const CMat &G, const RVec &powers, double noise_variance);

/// sum_i log2(1 + sinr_i)
double sum_rate(const RVec &sinrs);

/// Interference-free rate sum_i log2(1 + rho_i P_i d_i^2 / sigma^2).
double zf_sum_rate(const RVec &gains, const RVec &powers, const RVec &path_loss, double noise_variance);

/// Convenience: sum_rate(sinr(...)).
inline double evaluate_sum_rate(const CMat &H, const RVec &path_loss, const CMat &G, const RVec &powers,
                                double noise_variance)
{
    return sum_rate(sinr(H, path_loss, G, powers, noise_variance));
}

} // namespace simbeam
