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


#include "simbeam/rate.hpp"

#include <cmath>

namespace simbeam
{

RVec sinr(const CMat &H, const RVec &path_loss, const CMat &G, const RVec &powers, double noise_variance)
{
    if (!(noise_variance > 0.0))
        throw DomainError("sinr: noise variance must be positive");
    const Eigen::Index N = H.rows();
    if (G.rows() != H.cols() || G.cols() != N || powers.size() != N || path_loss.size() != N)
        throw StructuralError("sinr: inconsistent dimensions");

    // |h_i^H g_j|^2 for all pairs, scaled by P_j.
    const RMat gain = (H * G).cwiseAbs2();
    RVec out(N);
    for (Eigen::Index i = 0; i < N; ++i)
    {
        double interference = 0.0;
        for (Eigen::Index j = 0; j < N; ++j)
            if (j != i)
                interference += powers[j] * gain(i, j);
        const double signal = path_loss[i] * powers[i] * gain(i, i);
        out[i] = signal / (path_loss[i] * interference + noise_variance);
    }
    return out;
}

double sum_rate(const RVec &sinrs)
{
    double r = 0.0;
    for (Eigen::Index i = 0; i < sinrs.size(); ++i)
        r += std::log2(1.0 + sinrs[i]);
    return r;
}

double zf_sum_rate(const RVec &gains, const RVec &powers, const RVec &path_loss, double noise_variance)
{
    if (!(noise_variance > 0.0))
        throw DomainError("zf_sum_rate: noise variance must be positive");
    if (gains.size() != powers.size() || gains.size() != path_loss.size())
        throw StructuralError("zf_sum_rate: inconsistent dimensions");
    double r = 0.0;
    for (Eigen::Index i = 0; i < gains.size(); ++i)
        r += std::log2(1.0 + path_loss[i] * powers[i] * gains[i] * gains[i] / noise_variance);
    return r;
}

} // namespace simbeam
