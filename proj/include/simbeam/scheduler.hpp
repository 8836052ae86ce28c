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

#include <cstdint>
#include <functional>
#include <vector>

#include "simbeam/channel.hpp"
#include "simbeam/rate.hpp"

namespace simbeam
{

/// All N-subsets of {0..K-1} in lexicographic order.
std::vector<std::vector<int>> enumerate_subsets(int num_users, int group_size);

std::uint64_t binomial(int n, int k);

/// Per-subset beamforming routine. Receives the reduced channel and a seed
/// derived from (trial seed, subset rank), so its result does not depend on
/// evaluation order.
using SubsetSolver = std::function<BeamformingSolution(const ReducedChannel &, std::uint64_t seed)>;

struct ScheduleResult
{
    std::vector<int> best_subset;
    std::vector<double> subset_rates; // lexicographic order; NaN for failed subsets
    BeamformingSolution solution;
    std::size_t evaluated = 0;
    std::size_t failed = 0;
};

/// Exhaustive opportunistic scheduling: runs `solver` on every N-subset and
/// keeps the best sum rate, ties to the lexicographically first subset.
ScheduleResult select_best(const CMat &H, const RVec &path_loss, int group_size, const SubsetSolver &solver,
                           std::uint64_t seed);

} // namespace simbeam
