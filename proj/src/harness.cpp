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


#include "simbeam/harness.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "simbeam/channel.hpp"
#include "simbeam/geometry.hpp"
#include "simbeam/log.hpp"
#include "simbeam/opt_beamform.hpp"
#include "simbeam/propagation.hpp"
#include "simbeam/scheduler.hpp"
#include "simbeam/sim_synth.hpp"
#include "simbeam/zf_beamform.hpp"

namespace simbeam
{

using nlohmann::json;

namespace
{

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

} // namespace

BeamformingSolution mmimo_baseline(const CMat &H, const RVec &path_loss, double noise_variance,
                                   double total_power, BaselineMode mode, std::uint64_t seed,
                                   const OptimizerOptions &opt, double max_condition)
{
    if (H.rows() > H.cols())
        throw DomainError("mmimo_baseline: more streams than aperture elements");
    if (mode == BaselineMode::zero_forcing)
        return solve_zf(H, path_loss, noise_variance, total_power, max_condition);

    const SumRateProblem prob{H, path_loss, noise_variance};
    if (opt.init == OptimizerOptions::Init::matched_filter)
        return optimize_beamforming(prob, total_power, matched_filter_beams(H), opt);
    Rng rng(seed);
    return optimize_beamforming(prob, total_power, rng, opt);
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t sweep_index, int trial)
{
    return mix_seed(mix_seed(master, sweep_index), static_cast<std::uint64_t>(trial));
}

namespace
{

struct Schedule
{
    ScheduleResult result;
    ReducedChannel reduced;
    double wall_ms = 0.0;
};

Schedule schedule(const CMat &H, const RVec &rho, const ResolvedPoint &p, double noise, BaselineMode mode,
                  std::uint64_t seed)
{
    const auto start = Clock::now();
    const double P = p.scenario.total_power();
    SubsetSolver solver = [&](const ReducedChannel &rc, std::uint64_t s) {
        return mmimo_baseline(rc.H, rc.path_loss, noise, P, mode, s, p.optimizer, p.scenario.zf_max_condition);
    };
    Schedule out;
    out.result = select_best(H, rho, p.scenario.num_antennas, solver, seed);
    out.reduced = reduce(H, rho, out.result.best_subset);
    out.wall_ms = elapsed_ms(start);
    return out;
}

void check_rate(double r, std::string_view what)
{
    if (!std::isfinite(r) || r < 0.0)
        throw DomainError(std::string(what) + ": non-finite or negative sum rate");
}

} // namespace

TrialResult run_trial(const CampaignConfig &cfg, std::size_t sweep_index, int trial)
{
    TrialResult out;
    out.trial = trial;
    out.sweep_index = sweep_index;
    out.seed = trial_seed(cfg.seed, sweep_index, trial);

    try
    {
        const double sweep_value = cfg.sweep_points().at(sweep_index);
        const ResolvedPoint p = resolve_point(cfg, sweep_value);
        const ScenarioConfig &sc = p.scenario;
        const double lambda = sc.wavelength();
        const double noise = sc.noise();
        const int Q = sc.num_meta();

        Rng rng(out.seed);
        const UserLayout users =
            place_users(rng, sc.num_users, sc.cell_radius_m, sc.bs_height_m, sim_reference_point(sc.bs_height_m));
        const CMat H = sample_user_channels(rng, sc.num_users, Q);
        RVec rho(sc.num_users);
        for (int k = 0; k < sc.num_users; ++k)
            rho[k] = path_loss(users.distances[k], lambda, sc.reference_distance_m, sc.path_loss_exponent);

        bool need_opt = false, need_zf = false;
        for (Scheme s : cfg.schemes)
            (uses_optimal(s) ? need_opt : need_zf) = true;

        std::optional<Schedule> opt_sched, zf_sched;
        if (need_opt)
            opt_sched = schedule(H, rho, p, noise, BaselineMode::optimal, mix_seed(out.seed, 1));
        if (need_zf)
            zf_sched = schedule(H, rho, p, noise, BaselineMode::zero_forcing, mix_seed(out.seed, 2));

        std::map<int, std::vector<CMat>> chains;
        auto chain_for = [&](int layers) -> const std::vector<CMat> & {
            auto it = chains.find(layers);
            if (it == chains.end())
                it = chains.emplace(layers, diffraction_chain(build_layout(sc.layout(layers)))).first;
            return it->second;
        };

        auto base_row = [&](Scheme s) {
            TrialRow r;
            r.trial = trial;
            r.scheme = s;
            r.sweep_index = sweep_index;
            r.sweep_value = sweep_value;
            r.seed = out.seed;
            r.pre_quantization_rate = kNaN;
            return r;
        };

        for (Scheme s : cfg.schemes)
        {
            const Schedule &sched = uses_optimal(s) ? *opt_sched : *zf_sched;
            const BeamformingSolution &sol = sched.result.solution;
            check_rate(sol.sum_rate, to_string(s));

            if (!is_sim(s))
            {
                TrialRow r = base_row(s);
                r.sum_rate = sol.sum_rate;
                r.target_rate = sol.sum_rate;
                r.iterations = sol.iterations;
                r.wall_ms = cfg.record_wall_time ? sched.wall_ms : 0.0;
                out.rows.push_back(r);
                continue;
            }

            const ReducedChannel &rc = sched.reduced;
            auto realized = [&](const std::vector<CMat> &Ws, const LayerStack &stack) {
                const double rate = evaluate_sum_rate(rc.H, rc.path_loss, cascade(Ws, stack), sol.powers, noise);
                check_rate(rate, to_string(s));
                return rate;
            };

            for (std::size_t ai = 0; ai < cfg.arrangements.size(); ++ai)
            {
                const Arrangement arr = cfg.arrangements[ai];
                const int num_ac = arr == Arrangement::pc_only ? 0 : sc.num_ac_layers;
                const auto kinds = arrange_layers(arr, sc.num_pc_layers, num_ac);
                const std::vector<CMat> &Ws = chain_for(static_cast<int>(kinds.size()));

                Rng init_rng(mix_seed(out.seed, 100 + ai));
                const LayerStack init =
                    initial_stack(init_rng, kinds, Q, sc.stack_params(), sc.random_ac_phases);

                bool want_cnt = false, want_qnt = false;
                for (Variant v : cfg.variants)
                {
                    want_cnt |= v == Variant::cnt_phase;
                    want_qnt |= v == Variant::qnt_phase;
                }

                std::optional<FitResult> cnt;
                double cnt_ms = 0.0, cnt_rate = kNaN;
                if (want_cnt || want_qnt)
                {
                    FitOptions fo = p.fit;
                    fo.quantization = Quantization::continuous;
                    const auto start = Clock::now();
                    cnt = pgd_fit(Ws, sol.beams, init, fo);
                    cnt_ms = elapsed_ms(start);
                    cnt_rate = realized(Ws, cnt->stack);
                }

                for (Variant v : cfg.variants)
                {
                    TrialRow r = base_row(s);
                    r.variant = v;
                    r.arrangement = arr;
                    r.target_rate = sol.sum_rate;
                    if (v == Variant::cnt_phase)
                    {
                        r.sum_rate = cnt_rate;
                        r.fit_residual = cnt->objective;
                        r.iterations = cnt->iterations;
                        r.wall_ms = cnt_ms;
                    }
                    else if (v == Variant::qnt_phase)
                    {
                        const auto start = Clock::now();
                        LayerStack q = cnt->stack;
                        quantize_stack(q, p.fit.phase_bits);
                        r.fit_residual = ls_objective(q, Ws, sol.beams);
                        r.sum_rate = realized(Ws, q);
                        r.pre_quantization_rate = cnt_rate;
                        r.iterations = cnt->iterations;
                        r.wall_ms = cnt_ms + elapsed_ms(start);
                    }
                    else
                    {
                        FitOptions fo = p.fit;
                        fo.quantization = Quantization::step_by_step;
                        const auto start = Clock::now();
                        const FitResult f = pgd_fit(Ws, sol.beams, init, fo);
                        r.wall_ms = elapsed_ms(start);
                        r.sum_rate = realized(Ws, f.stack);
                        r.fit_residual = f.objective;
                        r.iterations = f.iterations;
                    }
                    if (!cfg.record_wall_time)
                        r.wall_ms = 0.0;
                    out.rows.push_back(r);
                }
            }
        }
    }
    catch (const std::exception &e)
    {
        out.rows.clear();
        out.error = e.what();
    }
    return out;
}

std::vector<TrialRow> CampaignResult::rows() const
{
    std::vector<TrialRow> all;
    for (const auto &t : trials)
        all.insert(all.end(), t.rows.begin(), t.rows.end());
    return all;
}

std::vector<GroupSummary> expected_groups(const CampaignConfig &cfg)
{
    std::vector<GroupSummary> out;
    for (Scheme s : cfg.schemes)
    {
        if (!is_sim(s))
        {
            GroupSummary g;
            g.scheme = s;
            out.push_back(g);
            continue;
        }
        for (Arrangement a : cfg.arrangements)
            for (Variant v : cfg.variants)
            {
                GroupSummary g;
                g.scheme = s;
                g.arrangement = a;
                g.variant = v;
                out.push_back(g);
            }
    }
    return out;
}

std::vector<GroupSummary> summarize(const CampaignConfig &cfg, const std::vector<TrialRow> &rows)
{
    const auto points = cfg.sweep_points();
    const auto templates = expected_groups(cfg);
    std::vector<GroupSummary> out;
    for (std::size_t si = 0; si < points.size(); ++si)
    {
        for (GroupSummary g : templates)
        {
            g.sweep_index = si;
            g.sweep_value = points[si];
            double sum = 0.0, sum_res = 0.0, sum_target = 0.0, sum_pre = 0.0;
            std::size_t n_pre = 0;
            std::vector<double> vals;
            for (const TrialRow &r : rows)
            {
                if (r.sweep_index != si || r.scheme != g.scheme || r.variant != g.variant ||
                    r.arrangement != g.arrangement)
                    continue;
                vals.push_back(r.sum_rate);
                sum += r.sum_rate;
                sum_res += r.fit_residual;
                sum_target += r.target_rate;
                if (std::isfinite(r.pre_quantization_rate))
                {
                    sum_pre += r.pre_quantization_rate;
                    ++n_pre;
                }
            }
            g.count = vals.size();
            if (g.count > 0)
            {
                const double n = static_cast<double>(g.count);
                g.mean = sum / n;
                g.mean_fit_residual = sum_res / n;
                g.mean_target_rate = sum_target / n;
                if (g.count > 1)
                {
                    double ss = 0.0;
                    for (double v : vals)
                        ss += (v - g.mean) * (v - g.mean);
                    g.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
                }
                if (n_pre > 0)
                    g.pre_quantization_mean = sum_pre / static_cast<double>(n_pre);
            }
            out.push_back(g);
        }
    }
    return out;
}

CampaignResult run_campaign(const CampaignConfig &cfg)
{
    cfg.validate();
    const std::size_t points = cfg.sweep_points().size();
    const auto tasks = static_cast<std::ptrdiff_t>(points * static_cast<std::size_t>(cfg.trials));

    CampaignResult result;
    result.trials.resize(static_cast<std::size_t>(tasks));

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t t = 0; t < tasks; ++t)
    {
        const std::size_t si = static_cast<std::size_t>(t) / static_cast<std::size_t>(cfg.trials);
        const int trial = static_cast<int>(static_cast<std::size_t>(t) % static_cast<std::size_t>(cfg.trials));
        result.trials[static_cast<std::size_t>(t)] = run_trial(cfg, si, trial);
    }

    for (const TrialResult &t : result.trials)
    {
        if (t.error.empty())
            continue;
        ++result.failed_trials;
        log::warn("trial " + std::to_string(t.trial) + " at sweep point " + std::to_string(t.sweep_index) +
                  " skipped: " + t.error);
    }
    result.groups = summarize(cfg, result.rows());
    return result;
}

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace
{

std::string variant_name(const std::optional<Variant> &v) { return v ? std::string(to_string(*v)) : "none"; }
std::string arrangement_name(const std::optional<Arrangement> &a)
{
    return a ? std::string(to_string(*a)) : "none";
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

} // namespace

void write_csv(std::ostream &out, const CampaignConfig &cfg, const std::vector<TrialRow> &rows)
{
    const std::string sweep = std::string(to_string(cfg.sweep));
    out << "trial,scheme,variant,arrangement,sweep_name,sweep_value,sum_rate_bps_hz,fit_residual,iterations,"
           "wall_ms,seed\n";
    for (const TrialRow &r : rows)
    {
        out << r.trial << ',' << to_string(r.scheme) << ',' << variant_name(r.variant) << ','
            << arrangement_name(r.arrangement) << ',' << sweep << ',' << format_double(r.sweep_value) << ','
            << format_double(r.sum_rate) << ',' << format_double(r.fit_residual) << ',' << r.iterations << ','
            << format_double(r.wall_ms) << ',' << r.seed << '\n';
    }
}

namespace
{

void write_rate_detail(std::ostream &out, const CampaignConfig &cfg, const std::vector<TrialRow> &rows)
{
    const std::string sweep = std::string(to_string(cfg.sweep));
    out << "trial,scheme,variant,arrangement,sweep_name,sweep_value,target_rate_bps_hz,"
           "pre_quantization_rate_bps_hz,sum_rate_bps_hz\n";
    for (const TrialRow &r : rows)
    {
        out << r.trial << ',' << to_string(r.scheme) << ',' << variant_name(r.variant) << ','
            << arrangement_name(r.arrangement) << ',' << sweep << ',' << format_double(r.sweep_value) << ','
            << format_double(r.target_rate) << ',' << format_double(r.pre_quantization_rate) << ','
            << format_double(r.sum_rate) << '\n';
    }
}

} // namespace

json summary_json(const CampaignConfig &cfg, const CampaignResult &result)
{
    json groups = json::array();
    for (const GroupSummary &g : result.groups)
    {
        json e = {{"scheme", std::string(to_string(g.scheme))},
                  {"variant", variant_name(g.variant)},
                  {"arrangement", arrangement_name(g.arrangement)},
                  {"sweep_name", std::string(to_string(cfg.sweep))},
                  {"sweep_value", number_or_null(g.sweep_value)},
                  {"trials", g.count},
                  {"empty", g.count == 0}};
        if (g.count > 0)
        {
            e["mean_sum_rate_bps_hz"] = g.mean;
            e["std_error_bps_hz"] = g.std_error;
            e["mean_fit_residual"] = g.mean_fit_residual;
            e["mean_target_rate_bps_hz"] = g.mean_target_rate;
            if (g.pre_quantization_mean)
                e["pre_quantization_mean_bps_hz"] = *g.pre_quantization_mean;
        }
        else
        {
            e["mean_sum_rate_bps_hz"] = nullptr;
            e["std_error_bps_hz"] = nullptr;
        }
        groups.push_back(std::move(e));
    }
    json failures = json::array();
    for (const TrialResult &t : result.trials)
        if (!t.error.empty())
            failures.push_back({{"trial", t.trial}, {"sweep_index", t.sweep_index}, {"error", t.error}});
    return {{"groups", groups},
            {"failed_trials", result.failed_trials},
            {"failures", failures},
            {"config", to_json(cfg)}};
}

void write_outputs(const CampaignConfig &cfg, const CampaignResult &result)
{
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + cfg.output_dir.string() + ": " + ec.message());

    const auto rows = result.rows();
    auto open = [](const std::filesystem::path &path) {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("cannot open " + path.string() + " for writing");
        return f;
    };
    auto close = [](std::ofstream &f, const std::filesystem::path &path) {
        f.flush();
        if (!f)
            throw std::runtime_error("write to " + path.string() + " failed");
    };

    const auto csv_path = cfg.output_dir / "trials.csv";
    auto csv = open(csv_path);
    write_csv(csv, cfg, rows);
    close(csv, csv_path);

    const auto detail_path = cfg.output_dir / "rates.csv";
    auto detail = open(detail_path);
    write_rate_detail(detail, cfg, rows);
    close(detail, detail_path);

    const auto summary_path = cfg.output_dir / "summary.json";
    auto summary = open(summary_path);
    summary << summary_json(cfg, result).dump(2) << '\n';
    close(summary, summary_path);
}

} // namespace simbeam
