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

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "oracles.hpp"
#include "simbeam/log.hpp"
#include "simbeam/scheduler.hpp"
#include "simbeam/zf_beamform.hpp"

using namespace simbeam;
using namespace simbeam::testing;

TEST_CASE("subset enumeration")
{
    CHECK(enumerate_subsets(4, 4).size() == 1);
    CHECK(enumerate_subsets(10, 4).size() == 210);
    CHECK(binomial(10, 4) == 210);

    const auto s = enumerate_subsets(5, 2);
    const std::vector<std::vector<int>> hand{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2},
                                             {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
    CHECK(s == hand);

    const auto big = enumerate_subsets(9, 3);
    CHECK(std::is_sorted(big.begin(), big.end()));
    CHECK(std::set<std::vector<int>>(big.begin(), big.end()).size() == big.size());

    CHECK_THROWS_AS(enumerate_subsets(3, 4), DomainError);
    CHECK_THROWS_AS(enumerate_subsets(3, 0), DomainError);
}

namespace
{

BeamformingSolution fixed_rate(double r)
{
    BeamformingSolution s;
    s.sum_rate = r;
    return s;
}

} // namespace

TEST_CASE("best subset from a rate table")
{
    // K=3, N=2: subsets {0,1}, {0,2}, {1,2} with rates 2, 5, 3.
    const CMat H = CMat::Identity(3, 3);
    const RVec rho = RVec::Ones(3);
    std::map<std::vector<int>, double> table{{{0, 1}, 2.0}, {{0, 2}, 5.0}, {{1, 2}, 3.0}};
    const CMat Hc = H;
    SubsetSolver solver = [&](const ReducedChannel &rc, std::uint64_t) {
        std::vector<int> idx;
        for (int i = 0; i < rc.H.rows(); ++i)
            for (int k = 0; k < 3; ++k)
                if ((rc.H.row(i).array() == Hc.row(k).array()).all())
                    idx.push_back(k);
        return fixed_rate(table.at(idx));
    };
    const auto r = select_best(H, rho, 2, solver, 1);
    CHECK(r.best_subset == std::vector<int>{0, 2});
    CHECK(r.solution.sum_rate == 5.0);
    CHECK(r.evaluated == 3);
    CHECK(r.subset_rates == std::vector<double>{2.0, 5.0, 3.0});
}

TEST_CASE("ties go to the first subset in lexicographic order")
{
    const CMat H = CMat::Ones(4, 3);
    SubsetSolver solver = [](const ReducedChannel &, std::uint64_t) { return fixed_rate(1.0); };
    const auto r = select_best(H, RVec::Ones(4), 2, solver, 3);
    CHECK(r.best_subset == std::vector<int>{0, 1});
}

TEST_CASE("scheduled rate dominates every subset and grows with the pool")
{
    Rng rng(31);
    const CMat H = random_cmat(rng, 7, 12, std::sqrt(0.5));
    const RVec rho = random_rvec(rng, 7, 0.5, 1.5);
    SubsetSolver zf = [](const ReducedChannel &rc, std::uint64_t) {
        return solve_zf(rc.H, rc.path_loss, 0.1, 1.0);
    };
    const auto r = select_best(H, rho, 3, zf, 5);
    CHECK(r.evaluated == 35);
    CHECK(r.solution.sum_rate == *std::max_element(r.subset_rates.begin(), r.subset_rates.end()));
    for (double v : r.subset_rates)
        CHECK(r.solution.sum_rate >= v);

    const auto smaller = select_best(H.topRows(6), rho.head(6), 3, zf, 5);
    CHECK(r.solution.sum_rate >= smaller.solution.sum_rate);
}

TEST_CASE("solver seeds depend on the subset rank only")
{
    const CMat H = CMat::Identity(5, 5);
    std::vector<std::uint64_t> seen(10, 0);
    SubsetSolver solver = [&](const ReducedChannel &rc, std::uint64_t seed) {
        int rank = 0;
        const auto subsets = enumerate_subsets(5, 2);
        for (std::size_t s = 0; s < subsets.size(); ++s)
        {
            const auto ref = reduce(H, RVec::Ones(5), subsets[s]);
            if ((ref.H.array() == rc.H.array()).all())
                rank = static_cast<int>(s);
        }
        seen[rank] = seed;
        return fixed_rate(0.0);
    };
    select_best(H, RVec::Ones(5), 2, solver, 77);
    for (std::size_t s = 0; s < seen.size(); ++s)
        CHECK(seen[s] == mix_seed(77, s));
}

TEST_CASE("failing subsets are skipped")
{
    log::set_level(log::Level::quiet);
    const CMat H = CMat::Identity(4, 4);
    int calls = 0;
    SubsetSolver flaky = [&](const ReducedChannel &rc, std::uint64_t) {
#pragma omp atomic
        ++calls;
        if (rc.H(0, 0) == 1.0)
            throw std::runtime_error("boom");
        return fixed_rate(1.0);
    };
    const auto r = select_best(H, RVec::Ones(4), 2, flaky, 1);
    CHECK(calls == 6);
    CHECK(r.failed == 3);
    CHECK(r.best_subset == std::vector<int>{1, 2});
    CHECK(std::isnan(r.subset_rates[0]));

    SubsetSolver dead = [](const ReducedChannel &, std::uint64_t) -> BeamformingSolution {
        throw std::runtime_error("nope");
    };
    CHECK_THROWS_AS(select_best(H, RVec::Ones(4), 2, dead, 1), std::runtime_error);
    log::set_level(log::Level::warn);
}
