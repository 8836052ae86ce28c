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


#include <benchmark/benchmark.h>

#include "simbeam/geometry.hpp"
#include "simbeam/kernels.hpp"

namespace
{

using namespace simbeam;

struct Fixture
{
    SimGeometry geo;
    CMat B, E, P, target, gram;

    explicit Fixture(int side)
    {
        LayoutParams p;
        p.qx = side;
        p.qy = side;
        geo = build_layout(p);
        Rng rng(7);
        std::normal_distribution<double> n;
        auto random = [&](Eigen::Index r, Eigen::Index c) {
            CMat m(r, c);
            for (Eigen::Index i = 0; i < r; ++i)
                for (Eigen::Index j = 0; j < c; ++j)
                    m(i, j) = cplx(n(rng), n(rng));
            return m;
        };
        const Eigen::Index Q = geo.num_meta();
        B = random(Q, 4);
        E = random(Q, Q);
        P = random(Q, 4);
        target = random(Q, 4);
        gram = E.adjoint() * E;
    }

    kernels::DiffractionArgs args() const
    {
        return {geo.layers[0], geo.layers[1], geo.layer_gap, geo.meta_area, geo.wavelength};
    }
};

template <CMat (*K)(const kernels::DiffractionArgs &)> void bm_diffraction(benchmark::State &state)
{
    const Fixture f(static_cast<int>(state.range(0)));
    const auto a = f.args();
    for (auto _ : state)
        benchmark::DoNotOptimize(K(a));
}

template <CMat (*K)(const CMat &, const CMat &)> void bm_coupling_matrix(benchmark::State &state)
{
    const Fixture f(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(K(f.gram, f.B));
}

template <CVec (*K)(const CMat &, const CMat &, const CMat &)> void bm_coupling_vector(benchmark::State &state)
{
    const Fixture f(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(K(f.E, f.B, f.target));
}

template <CVec (*K)(const CMat &, const CMat &)> void bm_residual(benchmark::State &state)
{
    const Fixture f(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(K(f.B, f.P));
}

} // namespace

BENCHMARK(bm_diffraction<kernels::serial::diffraction>)->Name("diffraction/serial")->Arg(7)->Arg(16)->Arg(32);
BENCHMARK(bm_diffraction<kernels::omp::diffraction>)->Name("diffraction/omp")->Arg(7)->Arg(16)->Arg(32);
BENCHMARK(bm_coupling_matrix<kernels::serial::coupling_matrix>)
    ->Name("coupling_matrix/serial")
    ->Arg(7)
    ->Arg(16);
BENCHMARK(bm_coupling_matrix<kernels::omp::coupling_matrix>)->Name("coupling_matrix/omp")->Arg(7)->Arg(16);
BENCHMARK(bm_coupling_vector<kernels::serial::coupling_vector>)
    ->Name("coupling_vector/serial")
    ->Arg(7)
    ->Arg(16);
BENCHMARK(bm_coupling_vector<kernels::omp::coupling_vector>)->Name("coupling_vector/omp")->Arg(7)->Arg(16);
BENCHMARK(bm_residual<kernels::serial::residual_correlation>)->Name("residual/serial")->Arg(7)->Arg(16)->Arg(32);
BENCHMARK(bm_residual<kernels::omp::residual_correlation>)->Name("residual/omp")->Arg(7)->Arg(16)->Arg(32);

BENCHMARK_MAIN();
