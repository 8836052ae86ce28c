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


#include "simbeam/waterfill.hpp"

#include <cmath>
#include <limits>

namespace simbeam
{

namespace
{

double poured(const RVec &t, double mu)
{
    double s = 0.0;
    for (Eigen::Index i = 0; i < t.size(); ++i)
        if (std::isfinite(t[i]) && mu > t[i])
            s += mu - t[i];
    return s;
}

} // namespace

WaterfillResult waterfill(const RVec &thresholds, double budget, double rel_tol)
{
    const Eigen::Index n = thresholds.size();
    WaterfillResult out{RVec::Zero(n), 0.0, false};

    double t_max = -std::numeric_limits<double>::infinity();
    double t_min = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i)
    {
        if (std::isnan(thresholds[i]) || thresholds[i] < 0.0)
            throw DomainError("waterfill: thresholds must be non-negative");
        if (std::isfinite(thresholds[i]))
        {
            t_max = std::max(t_max, thresholds[i]);
            t_min = std::min(t_min, thresholds[i]);
        }
    }
    if (!std::isfinite(t_min))
    {
        out.inactive = true;
        return out;
    }
    if (!(budget > 0.0))
        return out;

    double lo = 0.0;
    double hi = t_max + budget;
    const double tol = rel_tol * budget;
    for (int it = 0; it < 200; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        const double s = poured(thresholds, mid);
        if (std::abs(s - budget) <= tol)
        {
            lo = hi = mid;
            break;
        }
        if (s < budget)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= std::numeric_limits<double>::epsilon() * hi)
            break;
    }
    double mu = 0.5 * (lo + hi);

    // Exact level for the active set found by the search.
    double sum_t = 0.0;
    int active = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::isfinite(thresholds[i]) && thresholds[i] < mu)
        {
            sum_t += thresholds[i];
            ++active;
        }
    if (active == 0)
    {
        // mu can only sit at t_min here; pour everything on the best stream(s).
        mu = t_min + budget;
        for (Eigen::Index i = 0; i < n; ++i)
            if (thresholds[i] == t_min)
            {
                sum_t += thresholds[i];
                ++active;
            }
    }
    // Keep the closed-form level when it reproduces the budget at least as well.
    const double exact = (budget + sum_t) / active;
    if (std::abs(poured(thresholds, exact) - budget) <= std::abs(poured(thresholds, mu) - budget))
        mu = exact;

    for (Eigen::Index i = 0; i < n; ++i)
        out.powers[i] = std::isfinite(thresholds[i]) ? std::max(0.0, mu - thresholds[i]) : 0.0;
    out.level = mu;
    return out;
}

} // namespace simbeam
