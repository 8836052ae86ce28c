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


#include "simbeam/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "simbeam/log.hpp"

namespace simbeam
{

std::uint64_t binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

std::vector<std::vector<int>> enumerate_subsets(int num_users, int group_size)
{
    if (group_size < 1)
        throw DomainError("enumerate_subsets: group size must be >= 1");
    if (group_size > num_users)
        throw DomainError("enumerate_subsets: group size " + std::to_string(group_size) + " exceeds the " +
                          std::to_string(num_users) + " available users");

    std::vector<std::vector<int>> out;
    out.reserve(binomial(num_users, group_size));
    std::vector<int> idx(group_size);
    for (int i = 0; i < group_size; ++i)
        idx[i] = i;
    while (true)
    {
        out.push_back(idx);
        int pos = group_size - 1;
        while (pos >= 0 && idx[pos] == num_users - group_size + pos)
            --pos;
        if (pos < 0)
            break;
        ++idx[pos];
        for (int j = pos + 1; j < group_size; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    return out;
}

ScheduleResult select_best(const CMat &H, const RVec &path_loss, int group_size, const SubsetSolver &solver,
                           std::uint64_t seed)
{
    const auto subsets = enumerate_subsets(static_cast<int>(H.rows()), group_size);
    const auto count = static_cast<std::ptrdiff_t>(subsets.size());
    std::vector<BeamformingSolution> solutions(subsets.size());
    std::vector<double> rates(subsets.size(), std::numeric_limits<double>::quiet_NaN());
    std::vector<std::string> errors(subsets.size());

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t s = 0; s < count; ++s)
    {
        try
        {
            const ReducedChannel rc = reduce(H, path_loss, subsets[s]);
            solutions[s] = solver(rc, mix_seed(seed, static_cast<std::uint64_t>(s)));
            rates[s] = solutions[s].sum_rate;
        }
        catch (const std::exception &e)
        {
            errors[s] = e.what();
        }
    }

    ScheduleResult out;
    out.evaluated = subsets.size();
    std::ptrdiff_t best = -1;
    for (std::ptrdiff_t s = 0; s < count; ++s)
    {
        if (!errors[s].empty() || !std::isfinite(rates[s]))
        {
            ++out.failed;
            log::warn("select_best: subset " + std::to_string(s) + " skipped: " +
                      (errors[s].empty() ? std::string("non-finite rate") : errors[s]));
            rates[s] = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        if (best < 0 || rates[s] > rates[best])
            best = s;
    }
    if (best < 0)
        throw std::runtime_error("select_best: every subset failed");

    out.best_subset = subsets[best];
    out.solution = std::move(solutions[best]);
    out.subset_rates = std::move(rates);
    return out;
}

} // namespace simbeam
