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
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "simbeam/geometry.hpp"
#include "simbeam/opt_beamform.hpp"
#include "simbeam/propagation.hpp"
#include "simbeam/sim_synth.hpp"

namespace simbeam
{

/// Physical and geometric constants of one simulated cell.
struct ScenarioConfig
{
    double carrier_hz = 28.0e9;
    int num_antennas = 4;
    int num_users = 8;
    int grid_x = 7;
    int grid_y = 7;
    int num_pc_layers = 8;
    int num_ac_layers = 4;
    double alpha_pc = 0.9;
    double alpha_min_db = -22.0;
    double alpha_max_db = 13.0;
    int phase_bits = 3;
    double total_power_dbm = 15.0;
    double bandwidth_hz = 10.0e6;
    double noise_psd_dbm_hz = -174.0;
    double path_loss_exponent = 3.5;
    double reference_distance_m = 1.0;
    double bs_height_m = 10.0;
    double cell_radius_m = 10.0;
    double pitch_wavelengths = 0.5;
    double antenna_spacing_wavelengths = 0.5;
    double stack_depth_wavelengths = 5.0;
    std::optional<double> first_gap_wavelengths;
    double meta_area_wavelengths2 = 0.25;
    double antenna_area_wavelengths2 = 0.25;
    bool random_ac_phases = false;
    double zf_max_condition = 1e16;

    int num_meta() const { return grid_x * grid_y; }
    double wavelength() const { return kSpeedOfLight / carrier_hz; }
    double total_power() const { return dbm_to_watts(total_power_dbm); }
    double noise() const;
    LayoutParams layout(int num_layers) const;
    StackParams stack_params() const;
    void validate() const;
};

enum class Scheme
{
    sim_opt,
    sim_zf,
    mmimo_opt,
    mmimo_zf
};

enum class Variant
{
    cnt_phase,
    qnt_phase,
    step_by_step_qnt
};

enum class SweepVariable
{
    none,
    grid_size,  // Q, must be a perfect square
    pc_layers,  // L_pc
    phase_bits, // b
    users,      // K
    iterations  // optimizer and fit iteration cap
};

std::string_view to_string(Scheme s);
std::string_view to_string(Variant v);
std::string_view to_string(SweepVariable v);
Scheme parse_scheme(std::string_view s);
Variant parse_variant(std::string_view s);
SweepVariable parse_sweep_variable(std::string_view s);

inline bool is_sim(Scheme s) { return s == Scheme::sim_opt || s == Scheme::sim_zf; }
inline bool uses_optimal(Scheme s) { return s == Scheme::sim_opt || s == Scheme::mmimo_opt; }

struct CampaignConfig
{
    ScenarioConfig scenario;
    OptimizerOptions optimizer;
    FitOptions fit;
    std::vector<Scheme> schemes{Scheme::sim_opt, Scheme::sim_zf, Scheme::mmimo_opt, Scheme::mmimo_zf};
    std::vector<Variant> variants{Variant::cnt_phase};
    std::vector<Arrangement> arrangements{Arrangement::rf_ac_pc};
    SweepVariable sweep = SweepVariable::none;
    std::vector<double> sweep_values;
    int trials = 200;
    std::uint64_t seed = 1;
    std::filesystem::path output_dir = "simbeam_out";
    bool record_wall_time = false;

    void validate() const;
    /// Sweep points to run; a single NaN-valued point when no sweep is set.
    std::vector<double> sweep_points() const;
};

/// One sweep point resolved into concrete settings.
struct ResolvedPoint
{
    ScenarioConfig scenario;
    OptimizerOptions optimizer;
    FitOptions fit;
};

ResolvedPoint resolve_point(const CampaignConfig &cfg, double sweep_value);

CampaignConfig parse_config(const nlohmann::json &j);
CampaignConfig load_config(const std::filesystem::path &path);
nlohmann::json to_json(const CampaignConfig &cfg);

} // namespace simbeam
