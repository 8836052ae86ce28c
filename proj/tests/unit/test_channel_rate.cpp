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


#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "simbeam/channel.hpp"
#include "simbeam/rate.hpp"

using namespace simbeam;
using namespace simbeam::testing;

TEST_CASE("channel statistics")
{
    Rng rng(123);
    const CMat H = sample_user_channels(rng, 2000, 49);
    const double mean_entry = H.cwiseAbs2().mean();
    CHECK(mean_entry == doctest::Approx(1.0).epsilon(0.02));
    const double mean_row = H.rowwise().squaredNorm().mean();
    CHECK(mean_row == doctest::Approx(49.0).epsilon(0.02));
    CHECK(std::abs(H.mean()) < 0.02);
}

TEST_CASE("channel draws are reproducible")
{
    Rng a(42), b(42);
    const CMat Ha = sample_user_channels(a, 8, 49);
    const CMat Hb = sample_user_channels(b, 8, 49);
    CHECK((Ha.array() == Hb.array()).all());
}

TEST_CASE("path loss")
{
    const double lam = 3.0e8 / 28.0e9;
    const double ref = lam * lam / std::pow(4.0 * kPi, 2.0);
    CHECK(path_loss(1.0, lam, 1.0, 3.5) == doctest::Approx(ref).epsilon(1e-15));
    CHECK(path_loss(10.0, lam, 1.0, 3.5) / path_loss(1.0, lam, 1.0, 3.5) ==
          doctest::Approx(std::pow(10.0, -3.5)).epsilon(1e-13));
    // Hand evaluation: lambda = 0.0107142857 m, lambda^2/(4 pi)^2 = 7.2695e-7,
    // 14.14^-3.5 = 9.4636e-5 -> 6.8796e-11.
    CHECK(path_loss(14.14, lam, 1.0, 3.5) == doctest::Approx(6.8796e-11).epsilon(1e-3));
}

TEST_CASE("noise variance")
{
    CHECK(noise_variance(-174.0, 10.0e6) == doctest::Approx(3.981e-14).epsilon(1e-3));
    CHECK(noise_variance(0.0, 1.0) == doctest::Approx(1e-3).epsilon(1e-15));
    CHECK(noise_variance(-174.0, 20.0e6) == doctest::Approx(2.0 * noise_variance(-174.0, 10.0e6)));
    CHECK_THROWS_AS(noise_variance(-174.0, 0.0), DomainError);
}

TEST_CASE("channel reduction")
{
    Rng rng(8);
    const CMat H = sample_user_channels(rng, 4, 6);
    RVec rho(4);
    rho << 1.0, 2.0, 3.0, 4.0;
    const std::vector<int> all{0, 1, 2, 3};
    const auto full = reduce(H, rho, all);
    CHECK((full.H.array() == H.array()).all());

    const std::vector<int> swap{2, 0};
    const auto r = reduce(H, rho, swap);
    CHECK((r.H.row(0).array() == H.row(2).array()).all());
    CHECK((r.H.row(1).array() == H.row(0).array()).all());
    CHECK(r.path_loss[0] == 3.0);
    CHECK(r.path_loss[1] == 1.0);

    CMat back = CMat::Zero(4, 6);
    for (std::size_t i = 0; i < swap.size(); ++i)
        back.row(swap[i]) = r.H.row(static_cast<Eigen::Index>(i));
    CHECK((back.row(2).array() == H.row(2).array()).all());

    const std::vector<int> dup{1, 1}, out{0, 4};
    CHECK_THROWS_AS(reduce(H, rho, dup), StructuralError);
    CHECK_THROWS_AS(reduce(H, rho, out), StructuralError);
}

TEST_CASE("sinr")
{
    SUBCASE("single user has no interference")
    {
        CMat h(1, 3), g(3, 1);
        h << cplx(1, 0), cplx(0, 1), cplx(1, 1);
        g << cplx(0.5, 0), cplx(0, 0.5), cplx(0.5, 0.5);
        const double gain = std::norm((h * g)(0, 0));
        const RVec s = sinr(h, RVec::Constant(1, 0.1), g, RVec::Constant(1, 2.0), 0.01);
        CHECK(s[0] == doctest::Approx(0.1 * 2.0 * gain / 0.01));
    }
    SUBCASE("two users against the hand expansion")
    {
        Rng rng(17);
        const CMat H = random_cmat(rng, 2, 3), G = random_cmat(rng, 3, 2);
        RVec rho(2), P(2);
        rho << 0.7, 1.3;
        P << 0.4, 0.9;
        const double s2 = 0.05;
        auto inner = [&](int i, int j) {
            cplx s = 0.0;
            for (int q = 0; q < 3; ++q)
                s += H(i, q) * G(q, j);
            return std::norm(s);
        };
        const double e0 = rho[0] * P[0] * inner(0, 0) / (rho[0] * P[1] * inner(0, 1) + s2);
        const double e1 = rho[1] * P[1] * inner(1, 1) / (rho[1] * P[0] * inner(1, 0) + s2);
        const RVec s = sinr(H, rho, G, P, s2);
        CHECK(s[0] == doctest::Approx(e0).epsilon(1e-13));
        CHECK(s[1] == doctest::Approx(e1).epsilon(1e-13));
    }
    SUBCASE("zero power gives zero SINR and noise must be positive")
    {
        Rng rng(3);
        const CMat H = random_cmat(rng, 2, 4), G = random_cmat(rng, 4, 2);
        RVec P(2);
        P << 0.0, 1.0;
        CHECK(sinr(H, RVec::Ones(2), G, P, 1.0)[0] == 0.0);
        CHECK_THROWS_AS(sinr(H, RVec::Ones(2), G, P, 0.0), DomainError);
    }
    SUBCASE("raising one power helps that stream and hurts the rest")
    {
        Rng rng(31);
        const CMat H = random_cmat(rng, 3, 5), G = random_cmat(rng, 5, 3);
        RVec P = RVec::Constant(3, 0.5);
        const RVec before = sinr(H, RVec::Ones(3), G, P, 0.1);
        P[1] = 0.9;
        const RVec after = sinr(H, RVec::Ones(3), G, P, 0.1);
        CHECK(after[1] >= before[1]);
        CHECK(after[0] <= before[0]);
        CHECK(after[2] <= before[2]);
    }
}

TEST_CASE("sum rate")
{
    CHECK(sum_rate(RVec::Ones(4)) == doctest::Approx(4.0));
    CHECK(sum_rate(RVec::Zero(3)) == 0.0);
    RVec s(2);
    s << 3.0, 15.0;
    CHECK(sum_rate(s) == doctest::Approx(6.0));

    RVec d(1), P(1), rho(1);
    d << 2.0;
    P << 0.5;
    rho << 3.0;
    CHECK(zf_sum_rate(d, P, rho, 1.5) == doctest::Approx(std::log2(1.0 + 3.0 * 0.5 * 4.0 / 1.5)));
}
