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

#include "simbeam/rate.hpp"
#include "simbeam/types.hpp"

namespace simbeam
{

struct ZfBeams
{
    CMat beams; // Q x N, unit-norm columns
    RVec gains; // d_i > 0, H G = diag(d)
};

/// Minimum-norm zero-forcing beams H^H (H H^H)^-1 diag(d), with
/// d_i = 1 / sqrt([(H H^H)^-1]_ii) so that every column has unit norm.
/// Throws SingularityError when the Gram matrix is not positive definite or
/// its condition number (cond(H)^2) exceeds `max_condition`.
ZfBeams zf_beamformer(const CMat &H, double max_condition = 1e16);

struct ZfPowers
{
    RVec powers;
    double level = 0.0; // mu_zf; P_i = (1/mu_zf - sigma^2 / (rho_i d_i^2))^+
};

ZfPowers zf_waterfill(const RVec &gains, const RVec &path_loss, double noise_variance, double total_power);

/// Beams, water-filled powers and the interference-free rate.
BeamformingSolution solve_zf(const CMat &H, const RVec &path_loss, double noise_variance, double total_power,
                             double max_condition = 1e16);

} // namespace simbeam
