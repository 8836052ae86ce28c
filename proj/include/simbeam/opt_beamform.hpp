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

#include <vector>

#include "simbeam/rate.hpp"
#include "simbeam/types.hpp"
#include "simbeam/waterfill.hpp"

namespace simbeam
{

struct OptimizerOptions
{
    enum class Stop
    {
        objective, // relative change of the sum rate
        parameters // Frobenius change of (G, P / P_tot)
    };
    enum class Init
    {
        random,        // uniform unit-norm columns
        matched_filter // g_i = h_i / ||h_i||
    };

    int max_iterations = 1000;
    double tolerance = 1e-8;
    Stop stop = Stop::objective;
    Init init = Init::random;
    double initial_step = 1.0;
    double shrink = 0.5;
    double sufficient_increase = 1e-4;
    int max_halvings = 30;
    double waterfill_tolerance = 1e-12;
    // New powers are (1 - w) * waterfilled + w * previous.
    double power_damping = 0.0;

    void validate() const;
};

/// Reduced channel and noise for one scheduled group. Row i of `H` is h_i^H.
struct SumRateProblem
{
    CMat H;
    RVec path_loss;
    double noise_variance = 0.0;

    int num_streams() const { return static_cast<int>(H.rows()); }
    int num_meta() const { return static_cast<int>(H.cols()); }
};

/// Sum rate in bits/s/Hz for beams `G` and powers `P`.
double beam_objective(const SumRateProblem &prob, const CMat &G, const RVec &powers);

/// Ascent direction of the sum rate with respect to column `i` of `G`: the
/// matched-filter term minus the interference leakage it causes on every
/// other stream. Expressed as the conjugate (Wirtinger) derivative of the
/// natural-log rate; the real gradient is twice this, scaled by 1/ln 2.
CVec grad_beam(const SumRateProblem &prob, const CMat &G, const RVec &powers, int i);

struct PgaStep
{
    CMat beams;
    double objective_before = 0.0;
    double objective_after = 0.0;
    std::vector<double> trace; // objective after each column update
};

/// One projected gradient ascent sweep over the columns with backtracking.
/// Columns stay on the unit sphere; the objective never decreases.
PgaStep pga_step(const SumRateProblem &prob, const CMat &G, const RVec &powers, const OptimizerOptions &opt);

/// Simultaneous water-filling over the N streams, treating the current
/// interference as noise. Returns zeros with `inactive` set when no stream
/// has a usable gain.
WaterfillResult waterfill_interference(const SumRateProblem &prob, const CMat &G, const RVec &powers,
                                       double total_power, double tol = 1e-12);

CMat random_unit_beams(Rng &rng, int num_meta, int num_streams);
CMat matched_filter_beams(const CMat &H);

struct OptimizeTrace
{
    std::vector<double> objective; // after each outer iteration
    std::vector<double> pga;       // after each PGA column update
};

/// Block-coordinate ascent: PGA on G, then iterative water-filling on P,
/// starting from the uniform split P_tot / N. Returns the best iterate seen.
BeamformingSolution optimize_beamforming(const SumRateProblem &prob, double total_power, const CMat &initial_beams,
                                         const OptimizerOptions &opt, OptimizeTrace *trace = nullptr);

/// As above, drawing the initial beams from `rng` according to `opt.init`.
BeamformingSolution optimize_beamforming(const SumRateProblem &prob, double total_power, Rng &rng,
                                         const OptimizerOptions &opt, OptimizeTrace *trace = nullptr);

} // namespace simbeam
