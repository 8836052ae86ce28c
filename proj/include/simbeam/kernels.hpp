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

// Data-parallel inner loops. Every kernel has a plain serial implementation,
// kept as the reference the tests compare against, and an OpenMP version that
// the library calls. Both must agree to rounding.

#include <span>

#include "simbeam/types.hpp"

namespace simbeam::kernels
{

struct DiffractionArgs
{
    std::span<const Point> src;
    std::span<const Point> dst;
    double gap;
    double area;
    double wavelength;
};

namespace serial
{

// entry(q, n) = (area cos / d) (1/(2 pi d) - j/lambda) exp(j 2 pi d / lambda)
CMat diffraction(const DiffractionArgs &args);

// (conj(B) B^T) o gram, with gram = E^H E.
CMat coupling_matrix(const CMat &gram, const CMat &B);

// [E^H o (conj(B) T^T)] 1
CVec coupling_vector(const CMat &E, const CMat &B, const CMat &target);

// rowsum(conj(B) o P), where P = E^H (G - G*). Equals A gamma - v.
CVec residual_correlation(const CMat &B, const CMat &P);

} // namespace serial

namespace omp
{

CMat diffraction(const DiffractionArgs &args);
CMat coupling_matrix(const CMat &gram, const CMat &B);
CVec coupling_vector(const CMat &E, const CMat &B, const CMat &target);
CVec residual_correlation(const CMat &B, const CMat &P);

} // namespace omp

} // namespace simbeam::kernels
