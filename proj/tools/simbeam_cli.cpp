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


#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "simbeam/config.hpp"
#include "simbeam/harness.hpp"
#include "simbeam/log.hpp"

namespace
{

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty())
            out.push_back(item);
    return out;
}

void apply_sweep(simbeam::CampaignConfig &cfg, const std::string &text)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw simbeam::ConfigError("--sweep expects NAME=v1,v2,... (got '" + text + "')");
    cfg.sweep = simbeam::parse_sweep_variable(text.substr(0, eq));
    cfg.sweep_values.clear();
    for (const auto &v : split(text.substr(eq + 1), ','))
    {
        try
        {
            std::size_t used = 0;
            cfg.sweep_values.push_back(std::stod(v, &used));
            if (used != v.size())
                throw std::invalid_argument(v);
        }
        catch (const std::exception &)
        {
            throw simbeam::ConfigError("--sweep: '" + v + "' is not a number");
        }
    }
}

void print_summary(const simbeam::CampaignConfig &cfg, const simbeam::CampaignResult &res)
{
    for (const auto &g : res.groups)
    {
        std::cout << simbeam::to_string(g.scheme);
        if (g.variant)
            std::cout << ' ' << simbeam::to_string(*g.variant);
        if (g.arrangement)
            std::cout << ' ' << simbeam::to_string(*g.arrangement);
        if (cfg.sweep != simbeam::SweepVariable::none)
            std::cout << ' ' << simbeam::to_string(cfg.sweep) << '=' << simbeam::format_double(g.sweep_value);
        if (g.count == 0)
            std::cout << ": no trials\n";
        else
            std::cout << ": " << g.mean << " +/- " << g.std_error << " bits/s/Hz (" << g.count << " trials)\n";
    }
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Multiuser downlink beamforming through stacked metasurfaces"};
    app.require_subcommand(1);

    auto *run = app.add_subcommand("run", "Run a Monte Carlo campaign");
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::string schemes;
    std::string sweep;
    std::string output_dir;
    bool timing = false;
    int verbosity = 0;
    bool quiet = false;
    run->add_option("-c,--config", config_path, "JSON configuration file (defaults apply when omitted)");
    run->add_option("-s,--seed", seed, "Master seed override");
    run->add_option("-n,--trials", trials, "Trial count override")->check(CLI::PositiveNumber);
    run->add_option("--schemes", schemes, "Comma-separated scheme filter (sim-opt,sim-zf,mmimo-opt,mmimo-zf)");
    run->add_option("--sweep", sweep, "Sweep selection NAME=v1,v2,... with NAME in Q, L_pc, b, K, iterations");
    run->add_option("-o,--output", output_dir, "Output directory");
    run->add_flag("--timing", timing, "Record wall-clock times in the CSV");
    run->add_flag("-v,--verbose", verbosity, "Increase verbosity (repeatable)");
    run->add_flag("-q,--quiet", quiet, "Suppress warnings");

    auto *defaults = app.add_subcommand("defaults", "Print the default configuration as JSON");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (defaults->parsed())
        {
            std::cout << simbeam::to_json(simbeam::CampaignConfig{}).dump(2) << '\n';
            return 0;
        }

        if (quiet)
            simbeam::log::set_level(simbeam::log::Level::quiet);
        else if (verbosity >= 2)
            simbeam::log::set_level(simbeam::log::Level::debug);
        else if (verbosity == 1)
            simbeam::log::set_level(simbeam::log::Level::info);

        simbeam::CampaignConfig cfg =
            config_path.empty() ? simbeam::CampaignConfig{} : simbeam::load_config(config_path);
        if (seed)
            cfg.seed = *seed;
        if (trials)
            cfg.trials = *trials;
        if (!schemes.empty())
        {
            cfg.schemes.clear();
            for (const auto &s : split(schemes, ','))
                cfg.schemes.push_back(simbeam::parse_scheme(s));
        }
        if (!sweep.empty())
            apply_sweep(cfg, sweep);
        if (!output_dir.empty())
            cfg.output_dir = output_dir;
        if (timing)
            cfg.record_wall_time = true;
        cfg.validate();

        simbeam::log::info("running " + std::to_string(cfg.trials) + " trials per sweep point");
        const auto result = simbeam::run_campaign(cfg);
        simbeam::write_outputs(cfg, result);
        print_summary(cfg, result);
        if (result.failed_trials > 0)
            std::cerr << result.failed_trials << " trial(s) failed; see summary.json\n";
        return 0;
    }
    catch (const simbeam::ConfigError &e)
    {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
