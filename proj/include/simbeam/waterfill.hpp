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

#include "simbeam/types.hpp"

namespace simbeam
{

struct WaterfillResult
{
    RVec powers;
    double level = 0.0;   // common water level mu
    bool inactive = false; // no stream had a finite threshold
};

/// P_i = [mu - t_i]^+ with sum_i P_i = budget. Thresholds may be +inf (stream
/// gets nothing). The level is bracketed by bisection on [0, max t + budget]
/// and then fixed exactly from the active set, so the budget holds to rounding.
WaterfillResult waterfill(const RVec &thresholds, double budget, double rel_tol = 1e-12);

} // namespace simbeam
