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


#include "simbeam/zf_beamform.hpp"

#include <cmath>
#include <string>

#include "simbeam/waterfill.hpp"

namespace simbeam
{

namespace
{

// In-place lower Cholesky of a small Hermitian matrix; names the first
// non-positive pivot on failure.
CMat cholesky_lower(const CMat &A)
{
    const Eigen::Index n = A.rows();
    CMat Lm = CMat::Zero(n, n);
    const double scale = A.diagonal().real().cwiseAbs().maxCoeff();
    for (Eigen::Index j = 0; j < n; ++j)
    {
        double d = std::real(A(j, j));
        for (Eigen::Index k = 0; k < j; ++k)
            d -= std::norm(Lm(j, k));
        if (!(d > 1e-14 * scale))
            throw SingularityError("zf_beamformer: Gram matrix is singular at pivot " + std::to_string(j) +
                                       " (reduced channel is not full row rank)",
                                   static_cast<std::size_t>(j));
        const double ljj = std::sqrt(d);
        Lm(j, j) = ljj;
        for (Eigen::Index i = j + 1; i < n; ++i)
        {
            cplx s = A(i, j);
            for (Eigen::Index k = 0; k < j; ++k)
                s -= Lm(i, k) * std::conj(Lm(j, k));
            Lm(i, j) = s / ljj;
        }
    }
    return Lm;
}

} // namespace

ZfBeams zf_beamformer(const CMat &H, double max_condition)
{
    const Eigen::Index N = H.rows();
    if (N < 1 || N > H.cols())
        throw DomainError("zf_beamformer: need 1 <= N <= Q");

    const CMat gram = H * H.adjoint();
    const CMat Lm = cholesky_lower(gram);

    const RVec eig = Eigen::SelfAdjointEigenSolver<CMat>(gram, Eigen::EigenvaluesOnly).eigenvalues();
    if (eig.minCoeff() <= 0.0 || eig.maxCoeff() / eig.minCoeff() > max_condition)
        throw SingularityError("zf_beamformer: Gram matrix condition number exceeds the cap", 0);

    // (H H^H)^-1 via the triangular factor.
    const CMat Linv = Lm.triangularView<Eigen::Lower>().solve(CMat::Identity(N, N));
    const CMat gram_inv = Linv.adjoint() * Linv;

    ZfBeams out;
    out.gains.resize(N);
    for (Eigen::Index i = 0; i < N; ++i)
        out.gains[i] = 1.0 / std::sqrt(std::real(gram_inv(i, i)));
    out.beams = H.adjoint() * gram_inv * out.gains.cast<cplx>().asDiagonal();
    return out;
}

ZfPowers zf_waterfill(const RVec &gains, const RVec &path_loss, double noise_variance, double total_power)
{
    if (gains.size() != path_loss.size())
        throw StructuralError("zf_waterfill: inconsistent dimensions");
    ZfPowers out{RVec::Zero(gains.size()), 0.0};
    if (!(total_power > 0.0))
        return out;
    RVec t(gains.size());
    for (Eigen::Index i = 0; i < gains.size(); ++i)
    {
        if (!(gains[i] > 0.0))
            throw DomainError("zf_waterfill: normalisation constants must be positive");
        t[i] = noise_variance / (path_loss[i] * gains[i] * gains[i]);
    }
    const WaterfillResult wf = waterfill(t, total_power);
    out.powers = wf.powers;
    out.level = wf.level > 0.0 ? 1.0 / wf.level : 0.0;
    return out;
}

BeamformingSolution solve_zf(const CMat &H, const RVec &path_loss, double noise_variance, double total_power,
                             double max_condition)
{
    const ZfBeams zf = zf_beamformer(H, max_condition);
    const ZfPowers p = zf_waterfill(zf.gains, path_loss, noise_variance, total_power);
    BeamformingSolution s;
    s.beams = zf.beams;
    s.powers = p.powers;
    s.total_power = total_power;
    s.sum_rate = zf_sum_rate(zf.gains, p.powers, path_loss, noise_variance);
    s.iterations = 0;
    return s;
}

} // namespace simbeam
