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


#include "simbeam/kernels.hpp"

#include <cmath>

namespace simbeam::kernels
{

namespace
{

inline cplx rs_entry(const Point &s, const Point &t, double gap2, double gap, double area, double lam)
{
    const double dx = t.x() - s.x();
    const double dy = t.y() - s.y();
    const double d = std::sqrt(dx * dx + dy * dy + gap2);
    const double cos_theta = gap / d;
    const cplx radial(1.0 / (kTwoPi * d), -1.0 / lam);
    return (area * cos_theta / d) * radial * std::polar(1.0, kTwoPi * d / lam);
}

void check(const DiffractionArgs &a)
{
    if (!(a.gap > 0.0))
        throw DomainError("diffraction_matrix: gap must be positive");
    if (!(a.wavelength > 0.0))
        throw DomainError("diffraction_matrix: wavelength must be positive");
    if (!(a.area > 0.0))
        throw DomainError("diffraction_matrix: element area must be positive");
}

void check_coupling(const CMat &E, const CMat &B)
{
    if (E.rows() != E.cols() || E.rows() != B.rows())
        throw StructuralError("coupling: E must be QxQ and B must be QxN");
}

} // namespace

namespace serial
{

CMat diffraction(const DiffractionArgs &a)
{
    check(a);
    const auto rows = static_cast<Eigen::Index>(a.dst.size());
    const auto cols = static_cast<Eigen::Index>(a.src.size());
    CMat W(rows, cols);
    const double gap2 = a.gap * a.gap;
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            W(r, c) = rs_entry(a.src[c], a.dst[r], gap2, a.gap, a.area, a.wavelength);
    return W;
}

CMat coupling_matrix(const CMat &gram, const CMat &B)
{
    check_coupling(gram, B);
    const Eigen::Index Q = B.rows();
    const Eigen::Index N = B.cols();
    CMat A(Q, Q);
    for (Eigen::Index c = 0; c < Q; ++c)
        for (Eigen::Index r = 0; r < Q; ++r)
        {
            cplx acc = 0.0;
            for (Eigen::Index n = 0; n < N; ++n)
                acc += std::conj(B(r, n)) * B(c, n);
            A(r, c) = acc * gram(r, c);
        }
    return A;
}

CVec coupling_vector(const CMat &E, const CMat &B, const CMat &target)
{
    check_coupling(E, B);
    const Eigen::Index Q = B.rows();
    const Eigen::Index N = B.cols();
    CVec v = CVec::Zero(Q);
    for (Eigen::Index r = 0; r < Q; ++r)
        for (Eigen::Index c = 0; c < Q; ++c)
        {
            cplx bt = 0.0;
            for (Eigen::Index n = 0; n < N; ++n)
                bt += std::conj(B(r, n)) * target(c, n);
            v[r] += std::conj(E(c, r)) * bt;
        }
    return v;
}

CVec residual_correlation(const CMat &B, const CMat &P)
{
    const Eigen::Index Q = B.rows();
    CVec r = CVec::Zero(Q);
    for (Eigen::Index q = 0; q < Q; ++q)
        for (Eigen::Index n = 0; n < B.cols(); ++n)
            r[q] += std::conj(B(q, n)) * P(q, n);
    return r;
}

} // namespace serial

namespace omp
{

CMat diffraction(const DiffractionArgs &a)
{
    check(a);
    const auto rows = static_cast<Eigen::Index>(a.dst.size());
    const auto cols = static_cast<Eigen::Index>(a.src.size());
    CMat W(rows, cols);
    const double gap2 = a.gap * a.gap;
#pragma omp parallel for schedule(static) if (rows * cols > 4096)
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            W(r, c) = rs_entry(a.src[c], a.dst[r], gap2, a.gap, a.area, a.wavelength);
    return W;
}

CMat coupling_matrix(const CMat &gram, const CMat &B)
{
    check_coupling(gram, B);
    const Eigen::Index Q = B.rows();
    // conj(B) B^T as one GEMM, then the elementwise product column by column.
    const CMat outer = B.conjugate() * B.transpose();
    CMat A(Q, Q);
#pragma omp parallel for schedule(static) if (Q * Q > 4096)
    for (Eigen::Index c = 0; c < Q; ++c)
        A.col(c) = outer.col(c).cwiseProduct(gram.col(c));
    return A;
}

CVec coupling_vector(const CMat &E, const CMat &B, const CMat &target)
{
    check_coupling(E, B);
    const Eigen::Index Q = B.rows();
    const CMat bt = B.conjugate() * target.transpose(); // Q x Q
    CVec v(Q);
#pragma omp parallel for schedule(static) if (Q * Q > 4096)
    for (Eigen::Index r = 0; r < Q; ++r)
        v[r] = E.col(r).dot(bt.row(r).transpose());
    return v;
}

CVec residual_correlation(const CMat &B, const CMat &P)
{
    return B.conjugate().cwiseProduct(P).rowwise().sum();
}

} // namespace omp

} // namespace simbeam::kernels
