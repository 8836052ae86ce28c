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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "simbeam/harness.hpp"
#include "simbeam/log.hpp"
#include "simbeam/zf_beamform.hpp"

using namespace simbeam;
using namespace simbeam::testing;
using nlohmann::json;

namespace
{

CampaignConfig small_config()
{
    CampaignConfig c;
    c.scenario.num_antennas = 2;
    c.scenario.num_users = 4;
    c.scenario.grid_x = 3;
    c.scenario.grid_y = 3;
    c.scenario.num_pc_layers = 2;
    c.scenario.num_ac_layers = 1;
    c.optimizer.max_iterations = 20;
    c.fit.max_iterations = 20;
    c.trials = 3;
    c.seed = 99;
    c.variants = {Variant::cnt_phase, Variant::qnt_phase, Variant::step_by_step_qnt};
    c.arrangements = {Arrangement::rf_ac_pc, Arrangement::pc_only};
    return c;
}

std::string csv_of(const CampaignConfig &c, const CampaignResult &r)
{
    std::ostringstream s;
    write_csv(s, c, r.rows());
    return s.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string &text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
    {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

} // namespace

TEST_CASE("defaults carry the reference scenario")
{
    const CampaignConfig c;
    const ScenarioConfig &s = c.scenario;
    CHECK(s.carrier_hz == 28.0e9);
    CHECK(s.total_power_dbm == 15.0);
    CHECK(s.num_antennas == 4);
    CHECK(s.num_users == 8);
    CHECK(s.num_meta() == 49);
    CHECK(s.num_pc_layers == 8);
    CHECK(s.num_ac_layers == 4);
    CHECK(s.alpha_pc == 0.9);
    CHECK(s.phase_bits == 3);
    CHECK(s.path_loss_exponent == 3.5);
    CHECK(s.reference_distance_m == 1.0);
    CHECK(s.bandwidth_hz == 10.0e6);
    CHECK(s.noise_psd_dbm_hz == -174.0);
    CHECK(s.bs_height_m == 10.0);
    CHECK(c.optimizer.max_iterations == 1000);
    CHECK(c.fit.max_iterations == 1000);
    CHECK(c.trials == 200);
    CHECK(s.total_power() == doctest::Approx(0.0316227766).epsilon(1e-9));
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("config parsing")
{
    SUBCASE("round trip through JSON")
    {
        CampaignConfig c = small_config();
        c.sweep = SweepVariable::grid_size;
        c.sweep_values = {4, 9};
        c.scenario.first_gap_wavelengths = 0.25;
        const CampaignConfig back = parse_config(to_json(c));
        CHECK(to_json(back) == to_json(c));
    }
    SUBCASE("partial documents keep defaults")
    {
        const auto c = parse_config(json::parse(R"({"trials": 5, "scenario": {"num_users": 6}})"));
        CHECK(c.trials == 5);
        CHECK(c.scenario.num_users == 6);
        CHECK(c.scenario.carrier_hz == 28.0e9);
    }
    SUBCASE("errors")
    {
        CHECK_THROWS_AS(parse_config(json::parse(R"({"trails": 5})")), ConfigError);
        CHECK_THROWS_AS(parse_config(json::parse(R"({"trials": 0})")), ConfigError);
        CHECK_THROWS_AS(parse_config(json::parse(R"({"schemes": ["sim-best"]})")), ConfigError);
        CHECK_THROWS_AS(parse_config(json::parse(R"({"scenario": {"num_users": "many"}})")), ConfigError);
        CHECK_THROWS_AS(parse_config(json::parse(R"({"sweep": {"variable": "Q", "values": [48]}})")),
                        ConfigError);
        CHECK_THROWS_AS(parse_config(json::parse(R"({"sweep": {"variable": "K", "values": [2]}})")), ConfigError);
        CHECK_THROWS_AS(load_config("/nonexistent/simbeam.json"), ConfigError);
    }
    SUBCASE("sweep resolution")
    {
        CampaignConfig c;
        c.sweep = SweepVariable::grid_size;
        c.sweep_values = {16, 64};
        const auto p = resolve_point(c, 64);
        CHECK(p.scenario.grid_x == 8);
        CHECK(p.scenario.grid_y == 8);
        c.sweep = SweepVariable::iterations;
        const auto q = resolve_point(c, 250);
        CHECK(q.optimizer.max_iterations == 250);
        CHECK(q.fit.max_iterations == 250);
        c.sweep = SweepVariable::phase_bits;
        CHECK(resolve_point(c, 8).fit.phase_bits == 8);
    }
}

TEST_CASE("baseline precoder")
{
    Rng rng(1);
    const CMat h = random_cmat(rng, 1, 9, std::sqrt(0.5));
    const RVec rho = RVec::Constant(1, 0.5);
    for (auto mode : {BaselineMode::optimal, BaselineMode::zero_forcing})
    {
        OptimizerOptions opt;
        opt.tolerance = 1e-14;
        const auto s = mmimo_baseline(h, rho, 0.1, 1.0, mode, 3, opt);
        const double closed = std::log2(1.0 + 0.5 * 1.0 * h.squaredNorm() / 0.1);
        CHECK(s.sum_rate == doctest::Approx(closed).epsilon(1e-8));
    }
    const CMat H = random_cmat(rng, 3, 9);
    const auto zf = mmimo_baseline(H, RVec::Ones(3), 0.1, 1.0, BaselineMode::zero_forcing, 0);
    const auto direct = solve_zf(H, RVec::Ones(3), 0.1, 1.0);
    CHECK(zf.sum_rate == direct.sum_rate);
    CHECK_THROWS_AS(mmimo_baseline(random_cmat(rng, 4, 3), RVec::Ones(4), 0.1, 1.0, BaselineMode::optimal, 0),
                    DomainError);
}

TEST_CASE("campaign output is reproducible and well formed")
{
    const CampaignConfig c = small_config();
    const CampaignResult a = run_campaign(c);
    const CampaignResult b = run_campaign(c);
    const std::string csv = csv_of(c, a);
    CHECK(csv == csv_of(c, b));
    CHECK(a.failed_trials == 0);

    const auto rows = parse_csv(csv);
    REQUIRE(!rows.empty());
    CHECK(rows[0] == std::vector<std::string>{"trial", "scheme", "variant", "arrangement", "sweep_name",
                                              "sweep_value", "sum_rate_bps_hz", "fit_residual", "iterations",
                                              "wall_ms", "seed"});
    // 2 SIM schemes x 2 arrangements x 3 variants + 2 baselines per trial.
    CHECK(rows.size() == 1 + 3 * (2 * 2 * 3 + 2));
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        REQUIRE(rows[i].size() == 11);
        const double rate = std::stod(rows[i][6]);
        CHECK(std::isfinite(rate));
        CHECK(rate >= 0.0);
        if (rows[i][1].rfind("mmimo", 0) == 0)
        {
            CHECK(rows[i][2] == "none");
            CHECK(rows[i][3] == "none");
        }
    }
    CHECK(csv.back() == '\n');

    // Means recomputed from the CSV text agree with the summary.
    std::map<std::string, std::pair<double, int>> acc;
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        auto &e = acc[rows[i][1] + "/" + rows[i][2] + "/" + rows[i][3]];
        e.first += std::stod(rows[i][6]);
        e.second += 1;
    }
    for (const auto &g : a.groups)
    {
        const std::string key = std::string(to_string(g.scheme)) + "/" +
                                (g.variant ? std::string(to_string(*g.variant)) : "none") + "/" +
                                (g.arrangement ? std::string(to_string(*g.arrangement)) : "none");
        REQUIRE(acc.count(key) == 1);
        CHECK(g.count == 3);
        CHECK(g.mean == doctest::Approx(acc[key].first / acc[key].second).epsilon(1e-14));
    }
}

TEST_CASE("summary of a single trial equals that trial")
{
    CampaignConfig c = small_config();
    c.trials = 1;
    c.schemes = {Scheme::sim_zf, Scheme::mmimo_zf};
    const auto r = run_campaign(c);
    const auto rows = r.rows();
    for (const auto &g : r.groups)
    {
        REQUIRE(g.count == 1);
        CHECK(g.std_error == 0.0);
        bool found = false;
        for (const auto &row : rows)
            if (row.scheme == g.scheme && row.variant == g.variant && row.arrangement == g.arrangement)
            {
                CHECK(g.mean == row.sum_rate);
                found = true;
            }
        CHECK(found);
    }
}

TEST_CASE("trial order does not change the summary")
{
    CampaignConfig c = small_config();
    c.schemes = {Scheme::sim_zf, Scheme::mmimo_zf};
    c.trials = 4;
    const auto forward = run_campaign(c);
    std::vector<TrialRow> reversed;
    for (int t = c.trials - 1; t >= 0; --t)
    {
        const auto tr = run_trial(c, 0, t);
        reversed.insert(reversed.end(), tr.rows.begin(), tr.rows.end());
    }
    const auto groups = summarize(c, reversed);
    REQUIRE(groups.size() == forward.groups.size());
    for (std::size_t i = 0; i < groups.size(); ++i)
    {
        CHECK(groups[i].count == forward.groups[i].count);
        CHECK(groups[i].mean == doctest::Approx(forward.groups[i].mean).epsilon(1e-14));
        CHECK(groups[i].std_error == doctest::Approx(forward.groups[i].std_error).epsilon(1e-12));
    }
}

TEST_CASE("grid-size sweep emits one group per scheme and point")
{
    CampaignConfig c = small_config();
    c.trials = 1;
    c.schemes = {Scheme::sim_zf, Scheme::mmimo_zf};
    c.variants = {Variant::cnt_phase};
    c.arrangements = {Arrangement::rf_ac_pc};
    c.optimizer.max_iterations = 5;
    c.fit.max_iterations = 5;
    c.sweep = SweepVariable::grid_size;
    c.sweep_values = {16, 36, 49, 64};
    const auto r = run_campaign(c);
    CHECK(r.groups.size() == 8);
    const auto rows = r.rows();
    CHECK(rows.size() == 8);
    for (std::size_t i = 0; i < rows.size(); ++i)
        CHECK(rows[i].sweep_value == c.sweep_values[i / 2]);
}

TEST_CASE("fitted SIM rate does not beat its target on average")
{
    CampaignConfig c = small_config();
    c.schemes = {Scheme::sim_opt};
    c.variants = {Variant::cnt_phase};
    c.arrangements = {Arrangement::rf_ac_pc};
    c.trials = 50;
    const auto r = run_campaign(c);
    REQUIRE(r.groups.size() == 1);
    CHECK(r.groups[0].count == 50);
    CHECK(r.groups[0].mean <= r.groups[0].mean_target_rate);
}

TEST_CASE("failed trials are recorded and groups without trials are marked empty")
{
    log::set_level(log::Level::quiet);
    CampaignConfig c = small_config();
    c.schemes = {Scheme::mmimo_zf};
    c.scenario.zf_max_condition = 1.0 + 1e-12;
    const auto r = run_campaign(c);
    CHECK(r.failed_trials == 3);
    REQUIRE(r.groups.size() == 1);
    CHECK(r.groups[0].count == 0);
    const json s = summary_json(c, r);
    CHECK(s["groups"][0]["empty"] == true);
    CHECK(s["groups"][0]["mean_sum_rate_bps_hz"].is_null());
    CHECK(s["failures"].size() == 3);
    log::set_level(log::Level::warn);
}

TEST_CASE("outputs land on disk")
{
    CampaignConfig c = small_config();
    c.trials = 1;
    c.schemes = {Scheme::mmimo_zf};
    c.output_dir = std::filesystem::temp_directory_path() / "simbeam_harness_test";
    std::filesystem::remove_all(c.output_dir);
    const auto r = run_campaign(c);
    write_outputs(c, r);
    CHECK(std::filesystem::exists(c.output_dir / "trials.csv"));
    CHECK(std::filesystem::exists(c.output_dir / "rates.csv"));
    std::ifstream in(c.output_dir / "summary.json");
    const json s = json::parse(in);
    CHECK(s["groups"].size() == 1);
    CHECK(s["config"]["seed"] == 99);

    c.output_dir = "/proc/simbeam_cannot_write_here";
    CHECK_THROWS_AS(write_outputs(c, r), std::runtime_error);
}

TEST_CASE("number formatting")
{
    CHECK(format_double(0.1) == "0.1");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(-2.5e-300) == "-2.5e-300");
}
