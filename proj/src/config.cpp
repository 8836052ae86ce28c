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


#include "simbeam/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "simbeam/channel.hpp"

namespace simbeam
{

using nlohmann::json;

double ScenarioConfig::noise() const { return noise_variance(noise_psd_dbm_hz, bandwidth_hz); }

LayoutParams ScenarioConfig::layout(int num_layers) const
{
    LayoutParams p;
    p.carrier_hz = carrier_hz;
    p.num_antennas = num_antennas;
    p.qx = grid_x;
    p.qy = grid_y;
    p.num_layers = num_layers;
    p.pitch_wavelengths = pitch_wavelengths;
    p.antenna_spacing_wavelengths = antenna_spacing_wavelengths;
    p.stack_depth_wavelengths = stack_depth_wavelengths;
    p.first_gap_wavelengths = first_gap_wavelengths;
    p.meta_area_wavelengths2 = meta_area_wavelengths2;
    p.antenna_area_wavelengths2 = antenna_area_wavelengths2;
    return p;
}

StackParams ScenarioConfig::stack_params() const
{
    StackParams p;
    p.alpha_pc = alpha_pc;
    p.alpha_min = db_to_amplitude(alpha_min_db);
    p.alpha_max = db_to_amplitude(alpha_max_db);
    p.phase_bits = phase_bits;
    return p;
}

void ScenarioConfig::validate() const
{
    if (!(carrier_hz > 0.0))
        throw ConfigError("scenario.carrier_hz must be positive");
    if (num_antennas < 1)
        throw ConfigError("scenario.num_antennas must be >= 1");
    if (num_users < num_antennas)
        throw ConfigError("scenario.num_users must be >= num_antennas");
    if (grid_x < 1 || grid_y < 1)
        throw ConfigError("scenario grid dimensions must be >= 1");
    if (num_antennas > num_meta())
        throw ConfigError("scenario: more antennas than meta-atoms per layer");
    if (num_pc_layers < 1 || num_ac_layers < 0)
        throw ConfigError("scenario: need at least one PC layer and a non-negative AC layer count");
    if (!(alpha_pc > 0.0))
        throw ConfigError("scenario.alpha_pc must be positive");
    if (!(alpha_min_db < alpha_max_db))
        throw ConfigError("scenario: alpha_min_db must be below alpha_max_db");
    if (phase_bits < 1 || phase_bits > 30)
        throw ConfigError("scenario.phase_bits must lie in [1, 30]");
    if (!(bandwidth_hz > 0.0))
        throw ConfigError("scenario.bandwidth_hz must be positive");
    if (!(reference_distance_m > 0.0) || !(path_loss_exponent > 0.0))
        throw ConfigError("scenario: path-loss parameters must be positive");
    if (!(bs_height_m > 0.0) || cell_radius_m < 0.0)
        throw ConfigError("scenario: invalid cell geometry");
    if (!(zf_max_condition > 1.0))
        throw ConfigError("scenario.zf_max_condition must exceed 1");
    build_layout(layout(num_pc_layers + num_ac_layers));
}

namespace
{

template <class E> struct Names
{
    E value;
    std::string_view name;
};

constexpr Names<Scheme> kSchemes[] = {{Scheme::sim_opt, "sim-opt"},
                                      {Scheme::sim_zf, "sim-zf"},
                                      {Scheme::mmimo_opt, "mmimo-opt"},
                                      {Scheme::mmimo_zf, "mmimo-zf"}};
constexpr Names<Variant> kVariants[] = {{Variant::cnt_phase, "cnt-phase"},
                                        {Variant::qnt_phase, "qnt-phase"},
                                        {Variant::step_by_step_qnt, "step-by-step-qnt"}};
constexpr Names<SweepVariable> kSweeps[] = {{SweepVariable::none, "none"},
                                            {SweepVariable::grid_size, "Q"},
                                            {SweepVariable::pc_layers, "L_pc"},
                                            {SweepVariable::phase_bits, "b"},
                                            {SweepVariable::users, "K"},
                                            {SweepVariable::iterations, "iterations"}};

template <class E, std::size_t M> std::string_view name_of(const Names<E> (&table)[M], E v)
{
    for (const auto &n : table)
        if (n.value == v)
            return n.name;
    return "unknown";
}

template <class E, std::size_t M> E value_of(const Names<E> (&table)[M], std::string_view s, const char *what)
{
    for (const auto &n : table)
        if (n.name == s)
            return n.value;
    std::string msg = std::string("unknown ") + what + " '" + std::string(s) + "'; expected one of:";
    for (const auto &n : table)
        msg += " " + std::string(n.name);
    throw ConfigError(msg);
}

void check_keys(const json &j, const std::set<std::string> &allowed, const std::string &where)
{
    if (!j.is_object())
        throw ConfigError(where + " must be an object");
    for (const auto &[k, _] : j.items())
        if (!allowed.count(k))
            throw ConfigError("unknown key '" + k + "' in " + where);
}

template <class T> void read(const json &j, const char *key, T &dst, const std::string &where)
{
    auto it = j.find(key);
    if (it == j.end())
        return;
    try
    {
        dst = it->get<T>();
    }
    catch (const json::exception &e)
    {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

} // namespace

std::string_view to_string(Scheme s) { return name_of(kSchemes, s); }
std::string_view to_string(Variant v) { return name_of(kVariants, v); }
std::string_view to_string(SweepVariable v) { return name_of(kSweeps, v); }
Scheme parse_scheme(std::string_view s) { return value_of(kSchemes, s, "scheme"); }
Variant parse_variant(std::string_view s) { return value_of(kVariants, s, "variant"); }
SweepVariable parse_sweep_variable(std::string_view s) { return value_of(kSweeps, s, "sweep variable"); }

void CampaignConfig::validate() const
{
    scenario.validate();
    optimizer.validate();
    fit.validate();
    if (trials < 1)
        throw ConfigError("trials must be >= 1");
    if (schemes.empty())
        throw ConfigError("at least one scheme is required");
    if (variants.empty() || arrangements.empty())
        throw ConfigError("variant and arrangement lists must not be empty");
    if (sweep != SweepVariable::none && sweep_values.empty())
        throw ConfigError("sweep '" + std::string(to_string(sweep)) + "' has no values");
    for (double v : sweep_points())
        resolve_point(*this, v);
}

std::vector<double> CampaignConfig::sweep_points() const
{
    if (sweep == SweepVariable::none)
        return {std::numeric_limits<double>::quiet_NaN()};
    return sweep_values;
}

namespace
{

int as_count(double v, const char *what)
{
    if (!std::isfinite(v) || v != std::floor(v) || v < 0.0 || v > 1e9)
        throw ConfigError(std::string("sweep value for ") + what + " must be a non-negative integer");
    return static_cast<int>(v);
}

} // namespace

ResolvedPoint resolve_point(const CampaignConfig &cfg, double value)
{
    ResolvedPoint p{cfg.scenario, cfg.optimizer, cfg.fit};
    switch (cfg.sweep)
    {
    case SweepVariable::none:
        break;
    case SweepVariable::grid_size: {
        const int q = as_count(value, "Q");
        const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(q))));
        if (side * side != q || q == 0)
            throw ConfigError("sweep value Q=" + std::to_string(q) + " is not a positive perfect square");
        p.scenario.grid_x = side;
        p.scenario.grid_y = side;
        break;
    }
    case SweepVariable::pc_layers:
        p.scenario.num_pc_layers = as_count(value, "L_pc");
        break;
    case SweepVariable::phase_bits:
        p.scenario.phase_bits = as_count(value, "b");
        break;
    case SweepVariable::users:
        p.scenario.num_users = as_count(value, "K");
        break;
    case SweepVariable::iterations:
        p.optimizer.max_iterations = as_count(value, "iterations");
        p.fit.max_iterations = p.optimizer.max_iterations;
        break;
    }
    p.fit.phase_bits = p.scenario.phase_bits;
    p.scenario.validate();
    p.optimizer.validate();
    p.fit.validate();
    return p;
}

namespace
{

void read_scenario(const json &j, ScenarioConfig &s)
{
    const std::string w = "scenario";
    check_keys(j, {"carrier_hz", "num_antennas", "num_users", "grid_x", "grid_y", "num_pc_layers", "num_ac_layers",
                   "alpha_pc", "alpha_min_db", "alpha_max_db", "phase_bits", "total_power_dbm", "bandwidth_hz",
                   "noise_psd_dbm_hz", "path_loss_exponent", "reference_distance_m", "bs_height_m",
                   "cell_radius_m", "pitch_wavelengths", "antenna_spacing_wavelengths", "stack_depth_wavelengths",
                   "first_gap_wavelengths", "meta_area_wavelengths2", "antenna_area_wavelengths2",
                   "random_ac_phases", "zf_max_condition"},
               w);
    read(j, "carrier_hz", s.carrier_hz, w);
    read(j, "num_antennas", s.num_antennas, w);
    read(j, "num_users", s.num_users, w);
    read(j, "grid_x", s.grid_x, w);
    read(j, "grid_y", s.grid_y, w);
    read(j, "num_pc_layers", s.num_pc_layers, w);
    read(j, "num_ac_layers", s.num_ac_layers, w);
    read(j, "alpha_pc", s.alpha_pc, w);
    read(j, "alpha_min_db", s.alpha_min_db, w);
    read(j, "alpha_max_db", s.alpha_max_db, w);
    read(j, "phase_bits", s.phase_bits, w);
    read(j, "total_power_dbm", s.total_power_dbm, w);
    read(j, "bandwidth_hz", s.bandwidth_hz, w);
    read(j, "noise_psd_dbm_hz", s.noise_psd_dbm_hz, w);
    read(j, "path_loss_exponent", s.path_loss_exponent, w);
    read(j, "reference_distance_m", s.reference_distance_m, w);
    read(j, "bs_height_m", s.bs_height_m, w);
    read(j, "cell_radius_m", s.cell_radius_m, w);
    read(j, "pitch_wavelengths", s.pitch_wavelengths, w);
    read(j, "antenna_spacing_wavelengths", s.antenna_spacing_wavelengths, w);
    read(j, "stack_depth_wavelengths", s.stack_depth_wavelengths, w);
    if (j.contains("first_gap_wavelengths") && !j["first_gap_wavelengths"].is_null())
    {
        double g = 0.0;
        read(j, "first_gap_wavelengths", g, w);
        s.first_gap_wavelengths = g;
    }
    read(j, "meta_area_wavelengths2", s.meta_area_wavelengths2, w);
    read(j, "antenna_area_wavelengths2", s.antenna_area_wavelengths2, w);
    read(j, "random_ac_phases", s.random_ac_phases, w);
    read(j, "zf_max_condition", s.zf_max_condition, w);
}

void read_optimizer(const json &j, OptimizerOptions &o)
{
    const std::string w = "optimizer";
    check_keys(j, {"max_iterations", "tolerance", "stop", "init", "initial_step", "shrink", "sufficient_increase",
                   "max_halvings", "waterfill_tolerance", "power_damping"},
               w);
    read(j, "max_iterations", o.max_iterations, w);
    read(j, "tolerance", o.tolerance, w);
    if (j.contains("stop"))
    {
        const auto s = j["stop"].get<std::string>();
        if (s == "objective")
            o.stop = OptimizerOptions::Stop::objective;
        else if (s == "parameters")
            o.stop = OptimizerOptions::Stop::parameters;
        else
            throw ConfigError("optimizer.stop must be 'objective' or 'parameters'");
    }
    if (j.contains("init"))
    {
        const auto s = j["init"].get<std::string>();
        if (s == "random")
            o.init = OptimizerOptions::Init::random;
        else if (s == "matched-filter")
            o.init = OptimizerOptions::Init::matched_filter;
        else
            throw ConfigError("optimizer.init must be 'random' or 'matched-filter'");
    }
    read(j, "initial_step", o.initial_step, w);
    read(j, "shrink", o.shrink, w);
    read(j, "sufficient_increase", o.sufficient_increase, w);
    read(j, "max_halvings", o.max_halvings, w);
    read(j, "waterfill_tolerance", o.waterfill_tolerance, w);
    read(j, "power_damping", o.power_damping, w);
}

void read_fit(const json &j, FitOptions &f)
{
    const std::string w = "fit";
    check_keys(j, {"max_iterations", "tolerance", "initial_step", "shrink", "sufficient_decrease", "max_halvings",
                   "step_growth", "amplitude_gradient"},
               w);
    read(j, "max_iterations", f.max_iterations, w);
    read(j, "tolerance", f.tolerance, w);
    read(j, "initial_step", f.initial_step, w);
    read(j, "shrink", f.shrink, w);
    read(j, "sufficient_decrease", f.sufficient_decrease, w);
    read(j, "max_halvings", f.max_halvings, w);
    read(j, "step_growth", f.step_growth, w);
    if (j.contains("amplitude_gradient"))
    {
        const auto s = j["amplitude_gradient"].get<std::string>();
        if (s == "scaled")
            f.amplitude_gradient = AmplitudeGradient::scaled;
        else if (s == "exact")
            f.amplitude_gradient = AmplitudeGradient::exact;
        else
            throw ConfigError("fit.amplitude_gradient must be 'scaled' or 'exact'");
    }
}

template <class E, class F> std::vector<E> read_list(const json &j, const char *key, F parse)
{
    const json &arr = j.at(key);
    if (!arr.is_array())
        throw ConfigError(std::string(key) + " must be an array of strings");
    std::vector<E> out;
    for (const auto &item : arr)
    {
        if (!item.is_string())
            throw ConfigError(std::string(key) + " must be an array of strings");
        out.push_back(parse(item.get<std::string>()));
    }
    return out;
}

} // namespace

CampaignConfig parse_config(const json &j)
{
    CampaignConfig c;
    check_keys(j, {"scenario", "optimizer", "fit", "schemes", "variants", "arrangements", "sweep", "trials", "seed",
                   "output_dir", "record_wall_time"},
               "config");
    try
    {
        if (j.contains("scenario"))
            read_scenario(j["scenario"], c.scenario);
        if (j.contains("optimizer"))
            read_optimizer(j["optimizer"], c.optimizer);
        if (j.contains("fit"))
            read_fit(j["fit"], c.fit);
        if (j.contains("schemes"))
            c.schemes = read_list<Scheme>(j, "schemes", parse_scheme);
        if (j.contains("variants"))
            c.variants = read_list<Variant>(j, "variants", parse_variant);
        if (j.contains("arrangements"))
            c.arrangements = read_list<Arrangement>(j, "arrangements", [](const std::string &s) {
                try
                {
                    return parse_arrangement(s);
                }
                catch (const std::exception &e)
                {
                    throw ConfigError(e.what());
                }
            });
        if (j.contains("sweep") && !j["sweep"].is_null())
        {
            const json &s = j["sweep"];
            check_keys(s, {"variable", "values"}, "sweep");
            c.sweep = parse_sweep_variable(s.at("variable").get<std::string>());
            c.sweep_values = s.value("values", std::vector<double>{});
        }
        read(j, "trials", c.trials, "config");
        read(j, "seed", c.seed, "config");
        if (j.contains("output_dir"))
            c.output_dir = j["output_dir"].get<std::string>();
        read(j, "record_wall_time", c.record_wall_time, "config");
    }
    catch (const json::exception &e)
    {
        throw ConfigError(std::string("config: ") + e.what());
    }
    c.fit.phase_bits = c.scenario.phase_bits;
    c.validate();
    return c;
}

CampaignConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    json j;
    try
    {
        j = json::parse(in, nullptr, true, true);
    }
    catch (const json::exception &e)
    {
        throw ConfigError("config file " + path.string() + ": " + e.what());
    }
    return parse_config(j);
}

json to_json(const CampaignConfig &c)
{
    const ScenarioConfig &s = c.scenario;
    json scenario = {{"carrier_hz", s.carrier_hz},
                     {"num_antennas", s.num_antennas},
                     {"num_users", s.num_users},
                     {"grid_x", s.grid_x},
                     {"grid_y", s.grid_y},
                     {"num_pc_layers", s.num_pc_layers},
                     {"num_ac_layers", s.num_ac_layers},
                     {"alpha_pc", s.alpha_pc},
                     {"alpha_min_db", s.alpha_min_db},
                     {"alpha_max_db", s.alpha_max_db},
                     {"phase_bits", s.phase_bits},
                     {"total_power_dbm", s.total_power_dbm},
                     {"bandwidth_hz", s.bandwidth_hz},
                     {"noise_psd_dbm_hz", s.noise_psd_dbm_hz},
                     {"path_loss_exponent", s.path_loss_exponent},
                     {"reference_distance_m", s.reference_distance_m},
                     {"bs_height_m", s.bs_height_m},
                     {"cell_radius_m", s.cell_radius_m},
                     {"pitch_wavelengths", s.pitch_wavelengths},
                     {"antenna_spacing_wavelengths", s.antenna_spacing_wavelengths},
                     {"stack_depth_wavelengths", s.stack_depth_wavelengths},
                     {"first_gap_wavelengths", nullptr},
                     {"meta_area_wavelengths2", s.meta_area_wavelengths2},
                     {"antenna_area_wavelengths2", s.antenna_area_wavelengths2},
                     {"random_ac_phases", s.random_ac_phases},
                     {"zf_max_condition", s.zf_max_condition}};
    if (s.first_gap_wavelengths)
        scenario["first_gap_wavelengths"] = *s.first_gap_wavelengths;

    const OptimizerOptions &o = c.optimizer;
    json optimizer = {{"max_iterations", o.max_iterations},
                      {"tolerance", o.tolerance},
                      {"stop", o.stop == OptimizerOptions::Stop::objective ? "objective" : "parameters"},
                      {"init", o.init == OptimizerOptions::Init::random ? "random" : "matched-filter"},
                      {"initial_step", o.initial_step},
                      {"shrink", o.shrink},
                      {"sufficient_increase", o.sufficient_increase},
                      {"max_halvings", o.max_halvings},
                      {"waterfill_tolerance", o.waterfill_tolerance},
                      {"power_damping", o.power_damping}};

    const FitOptions &f = c.fit;
    json fit = {{"max_iterations", f.max_iterations},
                {"tolerance", f.tolerance},
                {"initial_step", f.initial_step},
                {"shrink", f.shrink},
                {"sufficient_decrease", f.sufficient_decrease},
                {"max_halvings", f.max_halvings},
                {"step_growth", f.step_growth},
                {"amplitude_gradient", f.amplitude_gradient == AmplitudeGradient::scaled ? "scaled" : "exact"}};

    json schemes = json::array(), variants = json::array(), arrangements = json::array();
    for (Scheme x : c.schemes)
        schemes.push_back(std::string(to_string(x)));
    for (Variant x : c.variants)
        variants.push_back(std::string(to_string(x)));
    for (Arrangement x : c.arrangements)
        arrangements.push_back(std::string(to_string(x)));

    json out = {{"scenario", scenario},
                {"optimizer", optimizer},
                {"fit", fit},
                {"schemes", schemes},
                {"variants", variants},
                {"arrangements", arrangements},
                {"trials", c.trials},
                {"seed", c.seed},
                {"output_dir", c.output_dir.string()},
                {"record_wall_time", c.record_wall_time}};
    if (c.sweep != SweepVariable::none)
        out["sweep"] = {{"variable", std::string(to_string(c.sweep))}, {"values", c.sweep_values}};
    else
        out["sweep"] = nullptr;
    return out;
}

} // namespace simbeam
