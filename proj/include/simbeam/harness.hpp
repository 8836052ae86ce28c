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
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "simbeam/config.hpp"
#include "simbeam/rate.hpp"

namespace simbeam
{

enum class BaselineMode
{
    optimal,
    zero_forcing
};

/// Conventional fully digital precoder over the Q-element aperture: the
/// reduced channel is fed straight to the optimal or ZF solver.
BeamformingSolution mmimo_baseline(const CMat &H, const RVec &path_loss, double noise_variance,
                                   double total_power, BaselineMode mode, std::uint64_t seed,
                                   const OptimizerOptions &opt = {}, double max_condition = 1e16);

/// One CSV row.
struct TrialRow
{
    int trial = 0;
    Scheme scheme = Scheme::sim_opt;
    std::optional<Variant> variant;         // empty for mMIMO rows
    std::optional<Arrangement> arrangement; // empty for mMIMO rows
    std::size_t sweep_index = 0;
    double sweep_value = 0.0;
    double sum_rate = 0.0;     // bits/s/Hz; realized post-fit rate for SIM rows
    double target_rate = 0.0;  // rate of the scheduled Q x N precoder
    double pre_quantization_rate = 0.0; // NaN unless the row's phases were rounded after fitting
    double fit_residual = 0.0; // f2 for SIM rows, 0 otherwise
    int iterations = 0;
    double wall_ms = 0.0;
    std::uint64_t seed = 0;
};

struct TrialResult
{
    int trial = 0;
    std::size_t sweep_index = 0;
    std::uint64_t seed = 0;
    std::vector<TrialRow> rows;
    std::string error; // non-empty when the trial was skipped
};

std::uint64_t trial_seed(std::uint64_t master, std::size_t sweep_index, int trial);

/// Runs the full pipeline (placement, channels, scheduling, SIM fitting) for
/// one trial at one sweep point. Errors are captured in `TrialResult::error`.
TrialResult run_trial(const CampaignConfig &cfg, std::size_t sweep_index, int trial);

struct GroupSummary
{
    Scheme scheme = Scheme::sim_opt;
    std::optional<Variant> variant;
    std::optional<Arrangement> arrangement;
    std::size_t sweep_index = 0;
    double sweep_value = 0.0;
    std::size_t count = 0;
    double mean = 0.0;
    double std_error = 0.0;
    double mean_fit_residual = 0.0;
    double mean_target_rate = 0.0;
    std::optional<double> pre_quantization_mean;
};

struct CampaignResult
{
    std::vector<TrialResult> trials; // ordered by (sweep index, trial)
    std::vector<GroupSummary> groups;
    std::size_t failed_trials = 0;

    std::vector<TrialRow> rows() const;
};

/// Expected (scheme, variant, arrangement) groups for one sweep point, in
/// output order.
std::vector<GroupSummary> expected_groups(const CampaignConfig &cfg);

std::vector<GroupSummary> summarize(const CampaignConfig &cfg, const std::vector<TrialRow> &rows);

CampaignResult run_campaign(const CampaignConfig &cfg);

std::string format_double(double v);
void write_csv(std::ostream &out, const CampaignConfig &cfg, const std::vector<TrialRow> &rows);
nlohmann::json summary_json(const CampaignConfig &cfg, const CampaignResult &result);

/// Writes trials.csv and summary.json into cfg.output_dir; throws
/// std::runtime_error on I/O failure.
void write_outputs(const CampaignConfig &cfg, const CampaignResult &result);

} // namespace simbeam
